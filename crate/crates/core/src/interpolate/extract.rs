//! Ground interpolant extraction, lifting, unfreezing and Horn conversion.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::logic::{Clause, Formula, Quantifier, Term};
use crate::normalize::simplify_truth;
use crate::restriction::is_horn_like;
use crate::symbol::{FreshNames, Symbol};
use crate::tableau::{Node, Side, Tableau};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtractError {
    #[error("tableau is not ground")]
    NotGround,
    #[error("node at {0:?} has no side")]
    MissingSide(Vec<usize>),
    #[error("leaf at {0:?} is not closed by an ancestor")]
    OpenLeaf(Vec<usize>),
    #[error("tableau has no clauses")]
    Empty,
}

/// Value of `ipol` at the root.
pub fn extract_ipol(t: &Tableau) -> Result<Formula, ExtractError> {
    Ok(annotate(t)?.into_iter().next().map(|(_, f)| f).unwrap())
}

/// `ipol` of every node in pre-order, keyed by path; the root comes first.
pub fn annotate(t: &Tableau) -> Result<Vec<(Vec<usize>, Formula)>, ExtractError> {
    if !t.is_ground() {
        return Err(ExtractError::NotGround);
    }
    if t.root.children.is_empty() {
        return Err(ExtractError::Empty);
    }
    let mut out = Vec::new();
    let mut ancestors = Vec::new();
    let mut path = Vec::new();
    ipol(&t.root, &mut ancestors, &mut path, &mut out)?;
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

fn ipol<'a>(
    n: &'a Node,
    ancestors: &mut Vec<&'a Node>,
    path: &mut Vec<usize>,
    out: &mut Vec<(Vec<usize>, Formula)>,
) -> Result<Formula, ExtractError> {
    let value = if n.literal.is_some() && n.is_leaf() {
        let side = n.side.ok_or_else(|| ExtractError::MissingSide(path.clone()))?;
        let d = n.target.ok_or_else(|| ExtractError::OpenLeaf(path.clone()))?;
        // ancestors[0] is the root, so depth d is ancestors[d].
        let target = ancestors.get(d).filter(|_| d > 0).ok_or_else(|| ExtractError::OpenLeaf(path.clone()))?;
        let tside = target.side.ok_or_else(|| ExtractError::MissingSide(path[..d].to_vec()))?;
        match (side, tside) {
            (Side::F, Side::F) => Formula::False,
            (Side::F, Side::G) => Formula::Lit(n.lit().clone()),
            (Side::G, Side::F) => Formula::Lit(n.lit().complement()),
            (Side::G, Side::G) => Formula::True,
        }
    } else {
        let side = n.children[0].side.ok_or_else(|| {
            let mut p = path.clone();
            p.push(0);
            ExtractError::MissingSide(p)
        })?;
        ancestors.push(n);
        let mut parts = Vec::with_capacity(n.children.len());
        for (i, c) in n.children.iter().enumerate() {
            path.push(i);
            let r = ipol(c, ancestors, path, out);
            path.pop();
            parts.push(r?);
        }
        ancestors.pop();
        combine(side == Side::G, parts)
    };
    out.push((path.clone(), value.clone()));
    Ok(value)
}

/// Conjunction or disjunction of already simplified parts, simplified.
fn combine(is_and: bool, parts: Vec<Formula>) -> Formula {
    let (unit, zero) = if is_and { (Formula::True, Formula::False) } else { (Formula::False, Formula::True) };
    let mut keep = Vec::with_capacity(parts.len());
    for p in parts {
        if p == zero {
            return zero;
        }
        if p != unit {
            keep.push(p);
        }
    }
    if is_and {
        Formula::and(keep)
    } else {
        Formula::or(keep)
    }
}

/// Terms to lift: their order and quantifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lifting {
    pub terms: Vec<(Term, Symbol, Quantifier)>,
}

/// Replace the maximal `𝔽𝔾`-terms of a ground formula by fresh variables
/// `V1, V2, …`, quantified existentially for `𝔽`-terms and universally for
/// `𝔾`-terms. Subterms are quantified before their superterms: the terms are
/// sorted by depth, ties keeping their order of first occurrence.
pub fn lift(
    h: &Formula,
    funcs_f: &BTreeSet<Symbol>,
    funcs_g: &BTreeSet<Symbol>,
    fresh: &mut FreshNames,
) -> (Formula, Lifting) {
    let is_fg = |t: &Term| t.head().is_some_and(|s| funcs_f.contains(&s) || funcs_g.contains(&s));
    let mut order: Vec<Term> = Vec::new();
    let mut seen = BTreeSet::new();
    fn collect(t: &Term, is_fg: &dyn Fn(&Term) -> bool, order: &mut Vec<Term>, seen: &mut BTreeSet<Term>) {
        if is_fg(t) {
            if seen.insert(t.clone()) {
                order.push(t.clone());
            }
        } else if let Term::App(_, args) = t {
            args.iter().for_each(|a| collect(a, is_fg, order, seen));
        }
    }
    h.for_each_literal(&mut |l, _, _| l.args.iter().for_each(|a| collect(a, &is_fg, &mut order, &mut seen)));
    order.sort_by_key(|t| t.depth());
    let mut map = BTreeMap::new();
    let mut terms = Vec::with_capacity(order.len());
    for t in order {
        let v = fresh.fresh_from("V", 1);
        let q = if funcs_f.contains(&t.head().unwrap()) { Quantifier::Exists } else { Quantifier::Forall };
        map.insert(t.clone(), Term::Var(v));
        terms.push((t, v, q));
    }
    let matrix = h.replace_terms(&|t| map.get(t).cloned());
    let prefix: Vec<(Quantifier, Symbol)> = terms.iter().map(|(_, v, q)| (*q, *v)).collect();
    (Formula::quantify(&prefix, matrix), Lifting { terms })
}

/// Turn placeholder constants back into the variables they stand for.
pub fn unfreeze(h: &Formula, const_to_var: &BTreeMap<Symbol, Symbol>) -> Formula {
    if const_to_var.is_empty() {
        return h.clone();
    }
    h.replace_terms(&|t| match t {
        Term::App(c, args) if args.is_empty() => const_to_var.get(c).map(|v| Term::Var(*v)),
        _ => None,
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("formula is not Horn-like: {0}")]
pub struct NotHornLike(pub String);

/// Equivalent conjunction of Horn clauses, under the prefix of `h`, for a
/// Horn-like matrix.
pub fn hornify(h: &Formula) -> Result<Formula, NotHornLike> {
    let (prefix, matrix) = h.split_prefix();
    if !matrix.is_quantifier_free() || !matrix.is_nnf() || !is_horn_like(matrix) {
        return Err(NotHornLike(h.to_string()));
    }
    let clauses = horn_clauses(&simplify_truth(matrix));
    let body = Formula::and(clauses.iter().map(Clause::to_disjunction).collect());
    Ok(Formula::quantify(&prefix, body))
}

/// Distribute disjunction over conjunction. On Horn-like input every
/// resulting clause has at most one positive literal.
fn horn_clauses(f: &Formula) -> Vec<Clause> {
    match f {
        Formula::True => vec![],
        Formula::False => vec![Clause::empty()],
        Formula::Lit(l) => vec![Clause::new(vec![l.clone()])],
        Formula::And(fs) => {
            let mut out: Vec<Clause> = Vec::new();
            for g in fs {
                for c in horn_clauses(g) {
                    if !out.contains(&c) {
                        out.push(c);
                    }
                }
            }
            out
        }
        Formula::Or(fs) => {
            let mut acc = vec![Clause::empty()];
            for g in fs {
                let cs = horn_clauses(g);
                let mut next = Vec::with_capacity(acc.len() * cs.len());
                for a in &acc {
                    for c in &cs {
                        let mut lits = a.literals.clone();
                        for l in &c.literals {
                            if !lits.contains(l) {
                                lits.push(l.clone());
                            }
                        }
                        let c = Clause::new(lits);
                        if !next.contains(&c) {
                            next.push(c);
                        }
                    }
                }
                acc = next;
            }
            acc
        }
        _ => unreachable!("checked NNF, quantifier-free"),
    }
}
