//! Syntactic fragments: U- and VGT-range-restriction, Horn and Horn-like
//! formulas, and the preconditions for interpolants with free variables.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::logic::{Clause, Formula, Quantifier};
use crate::normalize::{cnf_with_limit, dnf_with_limit, nnf, NormalizeError, PrenexNormalForm, DEFAULT_MAX_CLAUSES};
use crate::symbol::Symbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// A universal variable of a CNF clause without negative occurrence.
    UClause,
    /// An existential variable of a DNF clause without positive occurrence.
    VgtExistential,
    /// A free variable missing from the positive literals of a DNF clause.
    VgtFree,
    /// `F` is not U-range-restricted.
    VxFRestricted,
    /// `¬G` is not U-range-restricted.
    VxNotGRestricted,
    /// All-negative clause in `cnf(F)`.
    Vx1,
    /// All-negative clause of `cnf(¬G)` lacking a free variable negatively.
    Vx2,
    /// Free variable of a `cnf(¬G)` clause without negative occurrence.
    Vx3,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::UClause => "u-clause",
            Condition::VgtExistential => "vgt-existential",
            Condition::VgtFree => "vgt-free",
            Condition::VxFRestricted => "vx-f-u-rr",
            Condition::VxNotGRestricted => "vx-not-g-u-rr",
            Condition::Vx1 => "vx-1",
            Condition::Vx2 => "vx-2",
            Condition::Vx3 => "vx-3",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub clause: Clause,
    /// Offending variable, if the condition names one.
    pub subject: Option<Symbol>,
    pub condition: Condition,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.condition, self.clause)?;
        if let Some(v) = self.subject {
            write!(f, " ({})", crate::syntax::var_display(v.as_str()))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionReport {
    pub verdict: bool,
    pub witnesses: Vec<Witness>,
}

impl RestrictionReport {
    fn from_witnesses(witnesses: Vec<Witness>) -> Self {
        RestrictionReport { verdict: witnesses.is_empty(), witnesses }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RestrictionError {
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
    #[error("cnf and dnf disagree on the quantifier prefix")]
    PrefixMismatch,
    #[error("free variables of F ({f:?}) and G ({g:?}) must both equal the query variables {x:?}")]
    VariableMismatch { f: Vec<String>, g: Vec<String>, x: Vec<String> },
}

fn names(s: &BTreeSet<Symbol>) -> Vec<String> {
    s.iter().map(|v| v.as_str().to_owned()).collect()
}

/// `vall(C) ∩ vars ⊆ vneg(C)` (or `vpos` with `positive`), as witnesses.
fn occurrence_witnesses(c: &Clause, vars: &BTreeSet<Symbol>, positive: bool, cond: Condition, out: &mut Vec<Witness>) {
    let signed = c.vars_with_sign(positive);
    for v in c.vars().intersection(vars) {
        if !signed.contains(v) {
            out.push(Witness { clause: c.clone(), subject: Some(*v), condition: cond });
        }
    }
}

fn u_witnesses(pnf: &PrenexNormalForm, out: &mut Vec<Witness>, cond: Condition) {
    let u = pnf.universal_vars();
    for c in &pnf.matrix {
        occurrence_witnesses(c, &u, false, cond, out);
    }
}

pub fn is_u_range_restricted(f: &Formula) -> Result<RestrictionReport, RestrictionError> {
    is_u_range_restricted_with_limit(f, DEFAULT_MAX_CLAUSES)
}

pub fn is_u_range_restricted_with_limit(f: &Formula, limit: usize) -> Result<RestrictionReport, RestrictionError> {
    let mut w = Vec::new();
    u_witnesses(&cnf_with_limit(f, limit)?, &mut w, Condition::UClause);
    Ok(RestrictionReport::from_witnesses(w))
}

pub fn is_vgt_range_restricted(f: &Formula) -> Result<RestrictionReport, RestrictionError> {
    is_vgt_range_restricted_with_limit(f, DEFAULT_MAX_CLAUSES)
}

pub fn is_vgt_range_restricted_with_limit(f: &Formula, limit: usize) -> Result<RestrictionReport, RestrictionError> {
    let c = cnf_with_limit(f, limit)?;
    let d = dnf_with_limit(f, limit)?;
    if c.prefix != d.prefix {
        return Err(RestrictionError::PrefixMismatch);
    }
    let mut w = Vec::new();
    u_witnesses(&c, &mut w, Condition::UClause);
    let e = d.existential_vars();
    let x = f.free_vars();
    for clause in &d.matrix {
        occurrence_witnesses(clause, &e, true, Condition::VgtExistential, &mut w);
        let pos = clause.vars_with_sign(true);
        for v in x.difference(&pos) {
            w.push(Witness { clause: clause.clone(), subject: Some(*v), condition: Condition::VgtFree });
        }
    }
    Ok(RestrictionReport::from_witnesses(w))
}

fn is_horn_clause(f: &Formula, positives: &mut usize) -> bool {
    match f {
        Formula::Lit(l) => {
            *positives += usize::from(l.positive);
            true
        }
        Formula::False => true,
        Formula::Or(fs) => fs.iter().all(|g| is_horn_clause(g, positives)),
        _ => false,
    }
}

fn horn_nnf(f: &Formula) -> bool {
    match f {
        Formula::True => true,
        Formula::And(fs) => fs.iter().all(horn_nnf),
        Formula::Quant(_, _, g) => horn_nnf(g),
        other => {
            let mut positives = 0;
            is_horn_clause(other, &mut positives) && positives <= 1
        }
    }
}

/// Built from Horn clauses with `∧`, `∃` and `∀`; checked on the NNF.
pub fn is_horn(f: &Formula) -> bool {
    horn_nnf(&nnf(f))
}

fn is_negative_or_false(f: &Formula) -> bool {
    matches!(f, Formula::False) || matches!(f, Formula::Lit(l) if !l.positive)
}

/// Literal, truth value, conjunction of Horn-like formulas, or disjunction
/// of negative literals, `⊥` and at most one Horn-like formula.
pub fn is_horn_like(f: &Formula) -> bool {
    match f {
        Formula::Lit(_) | Formula::True | Formula::False => true,
        Formula::And(fs) => fs.iter().all(is_horn_like),
        Formula::Or(fs) => {
            let others: Vec<&Formula> = fs.iter().filter(|g| !is_negative_or_false(g)).collect();
            others.len() <= 1 && others.iter().all(|g| is_horn_like(g))
        }
        _ => false,
    }
}

/// Preconditions for a VGT-range-restricted interpolant with free
/// variables `x`.
pub fn check_vx_preconditions(
    f: &Formula,
    g: &Formula,
    x: &BTreeSet<Symbol>,
) -> Result<RestrictionReport, RestrictionError> {
    let (fv, gv) = (f.free_vars(), g.free_vars());
    if fv != *x || gv != *x {
        return Err(RestrictionError::VariableMismatch { f: names(&fv), g: names(&gv), x: names(x) });
    }
    let not_g = Formula::not(g.clone());
    let cf = cnf_with_limit(f, DEFAULT_MAX_CLAUSES)?;
    let cg = cnf_with_limit(&not_g, DEFAULT_MAX_CLAUSES)?;
    let mut w = Vec::new();
    u_witnesses(&cf, &mut w, Condition::VxFRestricted);
    u_witnesses(&cg, &mut w, Condition::VxNotGRestricted);
    for c in cf.matrix.iter().filter(|c| c.is_negative()) {
        w.push(Witness { clause: c.clone(), subject: None, condition: Condition::Vx1 });
    }
    for c in &cg.matrix {
        let neg = c.vars_with_sign(false);
        if c.is_negative() {
            for v in x.difference(&neg) {
                w.push(Witness { clause: c.clone(), subject: Some(*v), condition: Condition::Vx2 });
            }
        }
        occurrence_witnesses(c, x, false, Condition::Vx3, &mut w);
    }
    Ok(RestrictionReport::from_witnesses(w))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prop4Report {
    pub vgt: bool,
    pub u: bool,
    pub u_negated: bool,
    pub universal: bool,
    pub existential: bool,
    pub agrees: bool,
}

/// Compare VGT-range-restriction of a sentence with U-range-restriction of
/// it and its negation, including the universal and existential special
/// cases.
pub fn prop4_check(f: &Formula) -> Result<Prop4Report, RestrictionError> {
    let vgt = is_vgt_range_restricted(f)?.verdict;
    let u = is_u_range_restricted(f)?.verdict;
    let u_negated = is_u_range_restricted(&Formula::not(f.clone()))?.verdict;
    let prefix = cnf_with_limit(f, DEFAULT_MAX_CLAUSES)?.prefix;
    let universal = prefix.iter().all(|(q, _)| *q == Quantifier::Forall);
    let existential = prefix.iter().all(|(q, _)| *q == Quantifier::Exists);
    let agrees = vgt == (u && u_negated) && (!universal || vgt == u) && (!existential || vgt == u_negated);
    Ok(Prop4Report { vgt, u, u_negated, universal, existential, agrees })
}
