//! Checking interpolants, and definitions by interpolation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::{interpolate, mentions_equality, reserved_names, InterpolateError, Interpolation, InterpolationOptions, Requirement};
use crate::logic::{Clause, Formula, Literal, Signature};
use crate::normalize::{equality_axioms, freeze_free_vars, skolemize_clausify, ClausePolarity};
use crate::symbol::Symbol;
use crate::tableau::{prove, ProveError};

/// Headroom over the main proof's limits for the entailment checks.
pub const VERIFY_HEADROOM: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "kebab-case")]
pub enum Check {
    Pass,
    Fail(String),
    /// The prover ran out of resources; never counts as a pass.
    Inconclusive(String),
}

impl Check {
    pub fn passed(&self) -> bool {
        *self == Check::Pass
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::Pass => f.write_str("pass"),
            Check::Fail(d) => write!(f, "FAIL ({d})"),
            Check::Inconclusive(d) => write!(f, "inconclusive ({d})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub vocabulary: Check,
    pub variables: Check,
    pub f_entails_h: Check,
    pub h_entails_g: Check,
    pub required: BTreeMap<Requirement, Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        [&self.vocabulary, &self.variables, &self.f_entails_h, &self.h_entails_g]
            .into_iter()
            .chain(self.required.values())
            .all(Check::passed)
    }

    pub fn rows(&self) -> Vec<(String, &Check)> {
        let mut rows = vec![
            ("vocabulary".to_string(), &self.vocabulary),
            ("variables".to_string(), &self.variables),
            ("F |= H".to_string(), &self.f_entails_h),
            ("H |= G".to_string(), &self.h_entails_g),
        ];
        rows.extend(self.required.iter().map(|(r, c)| (r.to_string(), c)));
        rows
    }
}

fn listing<T: fmt::Debug>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(", ")
}

/// Does `a ⊨ b` hold? Free variables are read as constants shared by both.
fn entails(a: &Formula, b: &Formula, opts: &InterpolationOptions) -> Check {
    let mut fresh = reserved_names(&[a, b]);
    let frozen = freeze_free_vars(a, b, &mut fresh);
    let mut clauses: Vec<Clause> = Vec::new();
    for (f, pol) in [(&frozen.f, ClausePolarity::AsStated), (&frozen.g, ClausePolarity::Negated)] {
        match skolemize_clausify(f, pol, &mut fresh, opts.max_clauses) {
            Ok(r) => clauses.extend(r.clauses),
            Err(e) => return Check::Inconclusive(e.to_string()),
        }
    }
    if opts.equality && (mentions_equality(a) || mentions_equality(b)) {
        match Signature::collect([&frozen.f, &frozen.g]) {
            Ok(sig) => clauses.extend(equality_axioms(&sig)),
            Err(e) => return Check::Fail(e.to_string()),
        }
    }
    if clauses.iter().any(Clause::is_empty) {
        return Check::Pass;
    }
    match prove(&clauses, &opts.limits.scaled(VERIFY_HEADROOM)) {
        Ok(_) => Check::Pass,
        Err(e) if e.is_resource_limit() => Check::Inconclusive(e.to_string()),
        Err(ProveError::NoRefutation) => Check::Fail("countermodel exists".into()),
        Err(e) => Check::Fail(e.to_string()),
    }
}

/// Check that `h` is a Craig-Lyndon interpolant of `f` and `g` with the
/// required properties.
pub fn verify_interpolant(
    f: &Formula,
    g: &Formula,
    h: &Formula,
    required: &BTreeSet<Requirement>,
    opts: &InterpolationOptions,
) -> VerifyReport {
    let (vf, vg, vh) = (f.vocabulary(), g.vocabulary(), h.vocabulary());
    let common = vf.intersection(&vg);
    let vocabulary = if vh.is_subset(&common) {
        Check::Pass
    } else {
        let preds = vh.predicates.difference(&common.predicates);
        let funcs = vh.functions.difference(&common.functions);
        Check::Fail(format!("not shared: {}", listing(preds.map(|p| format!("{p:?}")).chain(funcs.map(|s| s.to_string())))))
    };
    let common_vars: BTreeSet<Symbol> = f.free_vars().intersection(&g.free_vars()).copied().collect();
    let extra: Vec<Symbol> = h.free_vars().difference(&common_vars).copied().collect();
    let variables = if extra.is_empty() { Check::Pass } else { Check::Fail(format!("not shared: {}", listing(extra))) };
    let required = required
        .iter()
        .map(|r| (*r, if r.holds(h) { Check::Pass } else { Check::Fail("property does not hold".into()) }))
        .collect();
    VerifyReport {
        vocabulary,
        variables,
        f_entails_h: entails(f, h, opts),
        h_entails_g: entails(h, g, opts),
        required,
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DefinitionError {
    #[error("no target predicates given")]
    NoTargets,
    #[error("no definition found: {0}")]
    Interpolate(#[from] InterpolateError),
}

/// A formula `R` over the `targets` with `K ⊨ ∀X (Q ↔ R)`, where `X` are
/// the free variables of `Q`: an interpolant of `K ∧ Q` and `¬K′ ∨ Q′`,
/// where the primed copies rename every other predicate.
pub fn synthesize_definition(
    k: &Formula,
    q: &Formula,
    targets: &BTreeSet<Symbol>,
    opts: &InterpolationOptions,
) -> Result<Interpolation, DefinitionError> {
    if targets.is_empty() {
        return Err(DefinitionError::NoTargets);
    }
    let mut fresh = reserved_names(&[k, q]);
    let mut preds = k.vocabulary().predicate_symbols();
    preds.extend(q.vocabulary().predicate_symbols());
    let rename: BTreeMap<Symbol, Symbol> = preds
        .into_iter()
        .filter(|p| !targets.contains(p) && p.as_str() != crate::logic::EQUALITY)
        .map(|p| (p, fresh.fresh_like(&format!("{p}_prime"))))
        .collect();
    let prime = |f: &Formula| {
        f.map_literals(&|l: &Literal| Literal { pred: rename.get(&l.pred).copied().unwrap_or(l.pred), ..l.clone() })
    };
    let f = Formula::and(vec![k.clone(), q.clone()]);
    let g = Formula::or(vec![Formula::not(prime(k)), prime(q)]);
    Ok(interpolate(&f, &g, opts)?)
}
