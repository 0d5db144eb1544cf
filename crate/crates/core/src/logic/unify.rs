use std::collections::BTreeMap;

use super::{Literal, Term};
use crate::symbol::Symbol;

/// Idempotent substitution: no variable in the domain occurs in the range.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<Symbol, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, v: Symbol) -> Option<&Term> {
        self.map.get(&v)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &Term)> {
        self.map.iter()
    }

    pub fn apply(&self, t: &Term) -> Term {
        match t {
            Term::Var(v) => self.map.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::App(f, args) => Term::App(*f, args.iter().map(|a| self.apply(a)).collect()),
        }
    }

    /// Add `v ↦ t` where `t` is already normalized under `self` and does not
    /// contain `v`; keeps the substitution idempotent.
    pub fn bind(&mut self, v: Symbol, t: Term) {
        let single = Substitution { map: BTreeMap::from([(v, t.clone())]) };
        for rhs in self.map.values_mut() {
            *rhs = single.apply(rhs);
        }
        self.map.insert(v, t);
    }

    /// Insert without normalization; for building matchers whose range
    /// variables are unrelated to the domain.
    pub fn insert_raw(&mut self, v: Symbol, t: Term) {
        self.map.insert(v, t);
    }

    pub fn into_map(self) -> BTreeMap<Symbol, Term> {
        self.map
    }
}

impl FromIterator<(Symbol, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (Symbol, Term)>>(iter: I) -> Self {
        Substitution { map: iter.into_iter().collect() }
    }
}

fn unify_into(a: &Term, b: &Term, s: &mut Substitution) -> bool {
    let a = s.apply(a);
    let b = s.apply(b);
    match (&a, &b) {
        (Term::Var(x), Term::Var(y)) if x == y => true,
        (Term::Var(x), t) | (t, Term::Var(x)) => {
            if t.occurs(*x) {
                return false;
            }
            s.bind(*x, t.clone());
            true
        }
        (Term::App(f, fa), Term::App(g, ga)) => {
            f == g && fa.len() == ga.len() && fa.iter().zip(ga).all(|(x, y)| unify_into(x, y, s))
        }
    }
}

/// Most general unifier with occurs check; `None` if the terms do not unify.
pub fn unify(a: &Term, b: &Term) -> Option<Substitution> {
    let mut s = Substitution::new();
    unify_into(a, b, &mut s).then_some(s)
}

/// Simultaneous mgu of two argument lists.
pub fn unify_args(a: &[Term], b: &[Term]) -> Option<Substitution> {
    if a.len() != b.len() {
        return None;
    }
    let mut s = Substitution::new();
    a.iter().zip(b).all(|(x, y)| unify_into(x, y, &mut s)).then_some(s)
}

/// Extend `s` so that `pattern·s == target`; variables of `target` are
/// treated as constants.
pub fn match_term(pattern: &Term, target: &Term, s: &mut Substitution) -> bool {
    match pattern {
        Term::Var(v) => match s.get(*v) {
            Some(bound) => bound == target,
            None => {
                s.insert_raw(*v, target.clone());
                true
            }
        },
        Term::App(f, args) => match target {
            Term::App(g, targs) if f == g && args.len() == targs.len() => {
                args.iter().zip(targs).all(|(p, t)| match_term(p, t, s))
            }
            _ => false,
        },
    }
}

impl Literal {
    /// Matcher extending `s` with `self·s == target`.
    pub fn match_onto(&self, target: &Literal, s: &mut Substitution) -> bool {
        self.positive == target.positive
            && self.pred == target.pred
            && self.args.len() == target.args.len()
            && self.args.iter().zip(&target.args).all(|(p, t)| match_term(p, t, s))
    }
}
