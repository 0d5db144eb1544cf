//! A small given-clause resolution prover that emits proof documents.
//! Used to produce sample proofs; binary resolution with merging only, so
//! it is incomplete on clause sets that need factoring.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use thiserror::Error;

use super::{rename, resolvent, ProofDoc, Rule, Step};
use crate::logic::{unify_args, Clause, Literal, Substitution, Term};
use crate::symbol::Symbol;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SaturationError {
    #[error("clause set saturated without the empty clause")]
    Saturated,
    #[error("gave up after {0} clauses")]
    Limit(usize),
}

#[derive(Clone, Debug)]
struct Kept {
    clause: Clause,
    rule: Rule,
}

fn weight(c: &Clause) -> usize {
    fn t(x: &Term) -> usize {
        match x {
            Term::Var(_) => 1,
            Term::App(_, a) => 1 + a.iter().map(t).sum::<usize>(),
        }
    }
    c.literals.iter().map(|l| 1 + l.args.iter().map(t).sum::<usize>()).sum()
}

/// Rename variables to `X1, X2, …` in order of first occurrence.
fn canonical(c: &Clause) -> Clause {
    let mut order: Vec<Symbol> = Vec::new();
    fn walk(t: &Term, order: &mut Vec<Symbol>) {
        match t {
            Term::Var(v) => {
                if !order.contains(v) {
                    order.push(*v);
                }
            }
            Term::App(_, a) => a.iter().for_each(|x| walk(x, order)),
        }
    }
    for l in &c.literals {
        l.args.iter().for_each(|a| walk(a, &mut order));
    }
    let s: Substitution =
        order.iter().enumerate().map(|(i, v)| (*v, Term::Var(Symbol::new(&format!("X{}", i + 1))))).collect();
    c.apply(&s)
}

/// Refute `clauses`, generating at most `max_clauses` clauses.
pub fn refute(clauses: &[Clause], max_clauses: usize) -> Result<ProofDoc, SaturationError> {
    let mut kept: Vec<Kept> = Vec::new();
    let mut seen: HashSet<Vec<Literal>> = HashSet::new();
    let mut queue: BTreeSet<(usize, usize)> = BTreeSet::new();
    let push = |c: Clause, rule: Rule, kept: &mut Vec<Kept>, seen: &mut HashSet<Vec<Literal>>, queue: &mut BTreeSet<(usize, usize)>| {
        let c = canonical(&c);
        if c.is_tautology() || !seen.insert(c.set_key()) {
            return None;
        }
        let w = weight(&c);
        kept.push(Kept { clause: c, rule });
        let i = kept.len() - 1;
        queue.insert((w, i));
        Some(i)
    };
    for c in clauses {
        if let Some(i) = push(c.clone(), Rule::Input, &mut kept, &mut seen, &mut queue) {
            if kept[i].clause.is_empty() {
                return Ok(extract(&kept, i));
            }
        }
    }
    let mut active: Vec<usize> = Vec::new();
    let mut picks = 0usize;
    while !queue.is_empty() {
        picks += 1;
        // Mostly lightest first, every fifth pick oldest first.
        let next = if picks.is_multiple_of(5) {
            *queue.iter().min_by_key(|(_, i)| *i).unwrap()
        } else {
            *queue.iter().next().unwrap()
        };
        queue.remove(&next);
        let given = next.1;
        active.push(given);
        for &other in &active {
            for (li, ri) in [(given, other), (other, given)] {
                let l = rename(&kept[li].clause, "_l");
                let r = rename(&kept[ri].clause, "_r");
                let mut new = Vec::new();
                for a in l.literals.iter().filter(|x| x.positive) {
                    for b in r.literals.iter().filter(|x| !x.positive && x.pred == a.pred) {
                        if let Some(s) = unify_args(&a.args, &b.args) {
                            let res = resolvent(&l, &r, &s, a);
                            new.push((res, a.apply(&s)));
                        }
                    }
                }
                for (res, atom) in new {
                    let rule = Rule::Resolve { left: li.to_string(), right: ri.to_string(), atom };
                    if let Some(i) = push(res, rule, &mut kept, &mut seen, &mut queue) {
                        if kept[i].clause.is_empty() {
                            return Ok(extract(&kept, i));
                        }
                    }
                    if kept.len() > max_clauses {
                        return Err(SaturationError::Limit(max_clauses));
                    }
                }
            }
        }
    }
    Err(SaturationError::Saturated)
}

/// Steps the empty clause depends on, numbered from 1 in creation order.
fn extract(kept: &[Kept], goal: usize) -> ProofDoc {
    let mut used = BTreeSet::new();
    let mut stack = vec![goal];
    while let Some(i) = stack.pop() {
        if used.insert(i) {
            if let Rule::Resolve { left, right, .. } = &kept[i].rule {
                stack.push(left.parse().unwrap());
                stack.push(right.parse().unwrap());
            }
        }
    }
    let number: BTreeMap<usize, String> = used.iter().enumerate().map(|(n, i)| (*i, (n + 1).to_string())).collect();
    let steps = used
        .iter()
        .map(|i| {
            let k = &kept[*i];
            let rule = match &k.rule {
                Rule::Input => Rule::Input,
                Rule::Resolve { left, right, atom } => Rule::Resolve {
                    left: number[&left.parse::<usize>().unwrap()].clone(),
                    right: number[&right.parse::<usize>().unwrap()].clone(),
                    atom: atom.clone(),
                },
            };
            Step { id: number[i].clone(), rule, clause: k.clause.clone(), bindings: Vec::new(), line: 0 }
        })
        .collect();
    ProofDoc { steps }
}
