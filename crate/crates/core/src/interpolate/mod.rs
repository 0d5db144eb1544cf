//! Interpolants from clausal tableau proofs.
//!
//! The pipeline freezes free variables to constants, clausifies `F` and
//! `¬G` with disjoint Skolem functions, proves `F′ ∧ G′`, grounds the
//! tableau, labels sides, reads the ground interpolant off the tableau and
//! lifts it back to a first-order formula.

mod extract;
pub mod invariants;
mod verify;

pub use extract::{annotate, extract_ipol, hornify, lift, unfreeze, ExtractError, Lifting, NotHornLike};
pub use verify::{synthesize_definition, verify_interpolant, Check, DefinitionError, VerifyReport};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::hyper::{hyper_convert, HyperError, HyperOptions, DEFAULT_MAX_NODES};
use crate::logic::{Clause, Formula, Signature, SignatureError, Term, EQUALITY};
use crate::normalize::{
    equality_axioms, freeze_free_vars, skolemize_clausify, ClausePolarity, NormalizeError, DEFAULT_MAX_CLAUSES,
};
use crate::restriction::{is_horn, is_u_range_restricted, is_vgt_range_restricted};
use crate::symbol::{FreshNames, Symbol};
use crate::syntax::var_display;
use crate::tableau::{assign_sides, ground_tableau, prove, GroundingPolicy, ProveError, ProverLimits, Side, SideError, Tableau};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Requirement {
    #[serde(rename = "u-rr")]
    URangeRestricted,
    #[serde(rename = "vgt-rr")]
    VgtRangeRestricted,
    #[serde(rename = "horn")]
    Horn,
}

impl Requirement {
    pub const ALL: [Requirement; 3] = [Requirement::URangeRestricted, Requirement::VgtRangeRestricted, Requirement::Horn];

    pub fn name(self) -> &'static str {
        match self {
            Requirement::URangeRestricted => "u-rr",
            Requirement::VgtRangeRestricted => "vgt-rr",
            Requirement::Horn => "horn",
        }
    }

    /// Whether `h` has the property.
    pub fn holds(self, h: &Formula) -> bool {
        match self {
            Requirement::URangeRestricted => is_u_range_restricted(h).is_ok_and(|r| r.verdict),
            Requirement::VgtRangeRestricted => is_vgt_range_restricted(h).is_ok_and(|r| r.verdict),
            Requirement::Horn => is_horn(h),
        }
    }
}

impl fmt::Display for Requirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Requirement {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Requirement::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown requirement `{s}` (expected u-rr, vgt-rr or horn)"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpolationOptions {
    pub require: BTreeSet<Requirement>,
    /// Convert to a hyper tableau even when nothing is required.
    pub force_hyper: bool,
    /// Side of tableau clauses that instantiate clauses of both inputs.
    pub side_tie: Side,
    pub grounding: GroundingPolicy,
    pub limits: ProverLimits,
    pub max_clauses: usize,
    pub max_nodes: usize,
    /// Add equality axioms when `=` occurs in the input.
    pub equality: bool,
}

impl Default for InterpolationOptions {
    fn default() -> Self {
        InterpolationOptions {
            require: BTreeSet::new(),
            force_hyper: false,
            side_tie: Side::F,
            grounding: GroundingPolicy::AllF,
            limits: ProverLimits::default(),
            max_clauses: DEFAULT_MAX_CLAUSES,
            max_nodes: DEFAULT_MAX_NODES,
            equality: true,
        }
    }
}

impl InterpolationOptions {
    pub fn requiring(require: &[Requirement]) -> Self {
        InterpolationOptions { require: require.iter().copied().collect(), ..Self::default() }
    }
}

/// Formulas and symbol sets of one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterpolationContext {
    pub f: Formula,
    pub g: Formula,
    pub f_clauses: Vec<Clause>,
    pub g_clauses: Vec<Clause>,
    /// Placeholder constants of variables free in both inputs.
    pub placeholders: BTreeSet<Symbol>,
    pub funcs_f: BTreeSet<Symbol>,
    pub funcs_g: BTreeSet<Symbol>,
}

impl InterpolationContext {
    /// `E`: terms whose outermost symbol is in `𝔽`.
    pub fn is_e(&self, t: &Term) -> bool {
        t.head().is_some_and(|s| self.funcs_f.contains(&s))
    }

    /// `U`: terms whose outermost symbol is in `𝔾`.
    pub fn is_u(&self, t: &Term) -> bool {
        t.head().is_some_and(|s| self.funcs_g.contains(&s))
    }

    pub fn is_placeholder(&self, t: &Term) -> bool {
        matches!(t, Term::App(c, a) if a.is_empty() && self.placeholders.contains(c))
    }

    /// `V = E ∪ U ∪ C`.
    pub fn is_v(&self, t: &Term) -> bool {
        self.is_e(t) || self.is_u(t) || self.is_placeholder(t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shortcut {
    /// `F′` contains the empty clause, the interpolant is `⊥`.
    EmptyClauseInF,
    /// `G′` contains the empty clause, the interpolant is `⊤`.
    EmptyClauseInG,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Timings {
    pub normalize_ms: f64,
    pub prove_ms: f64,
    pub hyper_ms: f64,
    pub extract_ms: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct InterpolationReport {
    pub shortcut: Option<Shortcut>,
    pub f_clauses: usize,
    pub g_clauses: usize,
    pub proof_size: usize,
    pub hyper_size: Option<usize>,
    pub hyper_rounds: Option<usize>,
    pub ground_interpolant: Option<String>,
    pub lifted_terms: usize,
    pub requirements: BTreeMap<Requirement, bool>,
    pub timings: Timings,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Interpolation {
    pub interpolant: Formula,
    pub ground_interpolant: Option<Formula>,
    pub context: InterpolationContext,
    /// The two-sided ground tableau the interpolant was read from.
    pub tableau: Option<Tableau>,
    pub report: InterpolationReport,
}

impl Interpolation {
    pub fn unmet(&self) -> Vec<Requirement> {
        self.report.requirements.iter().filter(|(_, ok)| !**ok).map(|(r, _)| *r).collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InterpolateError {
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
    #[error("entailment not proved: {0}")]
    NotProved(#[from] ProveError),
    #[error(transparent)]
    Hyper(#[from] HyperError),
    #[error(transparent)]
    Sides(#[from] SideError),
    #[error(transparent)]
    Extract(#[from] ExtractError),
}

impl InterpolateError {
    pub fn is_resource_limit(&self) -> bool {
        match self {
            InterpolateError::NotProved(e) => e.is_resource_limit(),
            InterpolateError::Normalize(NormalizeError::ClauseLimit { .. }) => true,
            InterpolateError::Hyper(HyperError::SizeLimit { .. }) => true,
            _ => false,
        }
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1000.0
}

/// Names that can't be handed out: every symbol of the inputs and the
/// printed form of every variable.
pub(crate) fn reserved_names(formulas: &[&Formula]) -> FreshNames {
    let mut fresh = FreshNames::new();
    for f in formulas {
        fresh.reserve_all(f.all_names().iter().map(|s| s.as_str()));
        for v in f.all_var_names() {
            fresh.reserve(&var_display(v.as_str()));
        }
    }
    fresh
}

fn mentions_equality(f: &Formula) -> bool {
    let mut found = false;
    f.for_each_literal(&mut |l, _, _| found |= l.pred.as_str() == EQUALITY);
    found
}

/// Craig-Lyndon interpolant of `f` and `g`, for `f ⊨ g`.
pub fn interpolate(f: &Formula, g: &Formula, opts: &InterpolationOptions) -> Result<Interpolation, InterpolateError> {
    Signature::collect([f, g])?;
    let mut report = InterpolationReport::default();
    let start = Instant::now();
    let mut fresh = reserved_names(&[f, g]);
    let frozen = freeze_free_vars(f, g, &mut fresh);
    let fc = skolemize_clausify(&frozen.f, ClausePolarity::AsStated, &mut fresh, opts.max_clauses)?;
    let gc = skolemize_clausify(&frozen.g, ClausePolarity::Negated, &mut fresh, opts.max_clauses)?;
    let (fun_f, fun_g) = (frozen.f.functions(), frozen.g.functions());
    let mut context = InterpolationContext {
        f: f.clone(),
        g: g.clone(),
        f_clauses: fc.clauses,
        g_clauses: gc.clauses,
        placeholders: frozen.shared.clone(),
        funcs_f: fc.skolem_functions.union(&fun_f.difference(&fun_g).copied().collect()).copied().collect(),
        funcs_g: gc.skolem_functions.union(&fun_g.difference(&fun_f).copied().collect()).copied().collect(),
    };
    if opts.equality && (mentions_equality(f) || mentions_equality(g)) {
        context.f_clauses.extend(equality_axioms(&Signature::collect([&frozen.f])?));
        context.g_clauses.extend(equality_axioms(&Signature::collect([&frozen.g])?));
    }
    report.f_clauses = context.f_clauses.len();
    report.g_clauses = context.g_clauses.len();
    report.timings.normalize_ms = ms(start);

    let shortcut = if context.f_clauses.iter().any(Clause::is_empty) {
        Some((Shortcut::EmptyClauseInF, Formula::False))
    } else if context.g_clauses.iter().any(Clause::is_empty) {
        Some((Shortcut::EmptyClauseInG, Formula::True))
    } else {
        None
    };
    if let Some((s, h)) = shortcut {
        report.shortcut = Some(s);
        return Ok(finish(h, None, context, None, report, opts));
    }

    let start = Instant::now();
    let all: Vec<Clause> = context.f_clauses.iter().chain(&context.g_clauses).cloned().collect();
    let proof = prove(&all, &opts.limits)?;
    report.proof_size = proof.size();
    report.timings.prove_ms = ms(start);

    let grounded = ground_tableau(&proof, opts.grounding, &mut fresh);
    context.funcs_f.extend(&grounded.s1);
    context.funcs_g.extend(&grounded.s2);
    let mut tableau = grounded.tableau;
    if opts.force_hyper || !opts.require.is_empty() {
        let start = Instant::now();
        let (t, trace) = hyper_convert(&tableau, &HyperOptions { max_nodes: opts.max_nodes, trace: false })?;
        report.hyper_size = Some(t.size());
        report.hyper_rounds = Some(trace.total_rounds);
        report.timings.hyper_ms = ms(start);
        tableau = t;
    }

    let start = Instant::now();
    let tableau = assign_sides(&tableau, &context.f_clauses, &context.g_clauses, opts.side_tie)?;
    let h_grd = extract_ipol(&tableau)?;
    report.ground_interpolant = Some(h_grd.to_string());
    let (lifted, lifting) = lift(&h_grd, &context.funcs_f, &context.funcs_g, &mut fresh);
    report.lifted_terms = lifting.terms.len();
    let h = unfreeze(&lifted, &frozen.const_to_var());
    report.timings.extract_ms = ms(start);
    Ok(finish(h, Some(h_grd), context, Some(tableau), report, opts))
}

fn finish(
    mut h: Formula,
    ground: Option<Formula>,
    context: InterpolationContext,
    tableau: Option<Tableau>,
    mut report: InterpolationReport,
    opts: &InterpolationOptions,
) -> Interpolation {
    if opts.require.contains(&Requirement::Horn) {
        if let Ok(horn) = hornify(&h) {
            h = horn;
        }
    }
    for r in &opts.require {
        report.requirements.insert(*r, r.holds(&h));
    }
    Interpolation { interpolant: h, ground_interpolant: ground, context, tableau, report }
}
