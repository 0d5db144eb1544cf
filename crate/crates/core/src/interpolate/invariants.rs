//! Structural invariants of hyper two-sided ground tableaux and of lifted
//! interpolants, checked node by node.

use std::collections::BTreeSet;

use super::{annotate, InterpolationContext, Lifting};
use crate::logic::{smax, smax_clause, Formula, MaxFilter, Term};
use crate::normalize::{cnf, dnf};
use crate::tableau::{Node, Side, Tableau};

/// Literals on the path to `path` (inclusive) with the given side.
fn path_formula(t: &Tableau, path: &[usize], side: Side) -> Formula {
    let mut node = &t.root;
    let mut lits = Vec::new();
    for &i in path {
        node = &node.children[i];
        if node.side == Some(side) {
            lits.push(Formula::Lit(node.lit().clone()));
        }
    }
    Formula::and(lits)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Invariant {
    /// `V-Max(C) ∩ U ⊆ V-Max⁻(C) ∪ V-Max⁺(path_F(N))` for the clauses `C`
    /// of `cnf(ipol(N))`.
    C,
    /// `V-Max(D) ∩ E ⊆ V-Max⁺(D) ∪ V-Max⁺(path_G(N))` for the conjunctive
    /// clauses `D` of `dnf(ipol(N))`.
    D,
    /// `C ⊆ V-Max⁺(D) ∪ V-Max⁺(path_G(N))` for inner nodes, same `D`.
    X,
}

/// First node (by path) violating `inv`, with a description.
pub fn check(t: &Tableau, ctx: &InterpolationContext, inv: Invariant) -> Result<(), String> {
    match violations(t, ctx, inv)?.into_iter().next() {
        Some((_, why)) => Err(why),
        None => Ok(()),
    }
}

/// Every node violating `inv`, in path order. `X` is only defined for
/// inner nodes.
pub fn violations(t: &Tableau, ctx: &InterpolationContext, inv: Invariant) -> Result<Vec<(Vec<usize>, String)>, String> {
    let is_v = |s: &Term| ctx.is_v(s);
    let mut out = Vec::new();
    for (path, value) in annotate(t).map_err(|e| e.to_string())? {
        let node = t.node_at(&path);
        if inv == Invariant::X && node.is_leaf() {
            continue;
        }
        let first = match inv {
            Invariant::C => {
                let allowed_path = smax(&is_v, &path_formula(t, &path, Side::F), MaxFilter::Positive);
                let mut bad = None;
                for c in cnf(&value).map_err(|e| e.to_string())?.matrix {
                    let neg = smax_clause(&is_v, &c, MaxFilter::Negative);
                    if let Some(s) = smax_clause(&is_v, &c, MaxFilter::All)
                        .into_iter()
                        .find(|s| ctx.is_u(s) && !neg.contains(s) && !allowed_path.contains(s))
                    {
                        bad = Some(format!("{s} in clause {c}"));
                        break;
                    }
                }
                bad
            }
            Invariant::D | Invariant::X => {
                let allowed_path = smax(&is_v, &path_formula(t, &path, Side::G), MaxFilter::Positive);
                let mut bad = None;
                for d in dnf(&value).map_err(|e| e.to_string())?.matrix {
                    let pos = smax_clause(&is_v, &d, MaxFilter::Positive);
                    let ok = |s: &Term| pos.contains(s) || allowed_path.contains(s);
                    let missing = if inv == Invariant::D {
                        smax_clause(&is_v, &d, MaxFilter::All).into_iter().find(|s| ctx.is_e(s) && !ok(s))
                    } else {
                        ctx.placeholders.iter().map(|c| Term::App(*c, vec![])).find(|s| !ok(s))
                    };
                    if let Some(s) = missing {
                        bad = Some(format!("{s} in conjunctive clause {d}"));
                        break;
                    }
                }
                bad
            }
        };
        if let Some(what) = first {
            out.push((path.clone(), format!("{inv:?} fails at {path:?} (ipol {value}): {what}")));
        }
    }
    Ok(out)
}

/// Every inner node of a closed hyper tableau has a clause of only
/// negative literals at or below it.
pub fn above_negative_clause(t: &Tableau) -> Result<(), String> {
    fn go(n: &Node, path: &mut Vec<usize>) -> Result<bool, String> {
        if n.is_leaf() {
            return Ok(false);
        }
        let mut found = n.children.iter().all(|c| !c.lit().positive);
        for (i, c) in n.children.iter().enumerate() {
            path.push(i);
            found |= go(c, path)?;
            path.pop();
        }
        if found {
            Ok(true)
        } else {
            Err(format!("no all-negative clause at or below {path:?}"))
        }
    }
    go(&t.root, &mut Vec::new()).map(|_| ())
}

/// Lifted terms are quantified after their subterms.
pub fn prefix_order(lifting: &Lifting) -> Result<(), String> {
    let terms: Vec<&Term> = lifting.terms.iter().map(|(t, _, _)| t).collect();
    for (i, ti) in terms.iter().enumerate() {
        for tj in &terms[..i] {
            if tj != ti && tj.contains(ti) {
                return Err(format!("{tj} is quantified before its subterm {ti}"));
            }
        }
    }
    let distinct: BTreeSet<&&Term> = terms.iter().collect();
    if distinct.len() != terms.len() {
        return Err("a term is lifted twice".into());
    }
    Ok(())
}
