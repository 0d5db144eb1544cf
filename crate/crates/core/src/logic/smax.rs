use std::collections::BTreeSet;

use super::{Clause, Formula, Literal, Term};

/// Which literal occurrences count for [`smax`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaxFilter {
    All,
    Positive,
    Negative,
}

impl MaxFilter {
    fn admits(self, l: &Literal) -> bool {
        match self {
            MaxFilter::All => true,
            MaxFilter::Positive => l.positive,
            MaxFilter::Negative => !l.positive,
        }
    }
}

fn collect(t: &Term, is_member: &dyn Fn(&Term) -> bool, out: &mut BTreeSet<Term>) {
    if is_member(t) {
        out.insert(t.clone());
        return;
    }
    if let Term::App(_, args) = t {
        for a in args {
            collect(a, is_member, out);
        }
    }
}

fn collect_literal(l: &Literal, is_member: &dyn Fn(&Term) -> bool, filter: MaxFilter, out: &mut BTreeSet<Term>) {
    if filter.admits(l) {
        for a in &l.args {
            collect(a, is_member, out);
        }
    }
}

/// `S-Max(F)`, `S-Max⁺(F)` or `S-Max⁻(F)` for a quantifier-free NNF: the
/// S-terms with an occurrence (in a literal of the requested sign) that is
/// not inside another S-term. `is_member` decides S-membership.
pub fn smax(is_member: &dyn Fn(&Term) -> bool, f: &Formula, filter: MaxFilter) -> BTreeSet<Term> {
    let mut out = BTreeSet::new();
    f.for_each_literal(&mut |l, _, _| collect_literal(l, is_member, filter, &mut out));
    out
}

pub fn smax_clause(is_member: &dyn Fn(&Term) -> bool, c: &Clause, filter: MaxFilter) -> BTreeSet<Term> {
    let mut out = BTreeSet::new();
    for l in &c.literals {
        collect_literal(l, is_member, filter, &mut out);
    }
    out
}
