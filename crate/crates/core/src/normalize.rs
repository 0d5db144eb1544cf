//! Negation normal form, bound-variable standardization, prenexing, the
//! cnf/dnf functionals, Skolemization, placeholder constants and equality
//! axioms.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use thiserror::Error;

use crate::logic::{Clause, Formula, Literal, Quantifier, Signature, Substitution, Term, EQUALITY};
use crate::symbol::{FreshNames, Symbol};

pub const DEFAULT_MAX_CLAUSES: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("normal form exceeds the limit of {limit} clauses")]
    ClauseLimit { limit: usize },
    #[error("formula is not a prenex formula with NNF matrix")]
    NotPrenex,
    #[error("expected a sentence, found free variables {0:?}")]
    NotSentence(Vec<String>),
}

/// Negation normal form. `→` and `↔` are expanded, negation is pushed to
/// the atoms. Built so that `nnf(¬X)` is exactly the dual of `nnf(X)`.
pub fn nnf(f: &Formula) -> Formula {
    nnf_pol(f, true)
}

fn nnf_pol(f: &Formula, pos: bool) -> Formula {
    match f {
        Formula::Lit(l) => Formula::Lit(if pos { l.clone() } else { l.complement() }),
        Formula::True => if pos { Formula::True } else { Formula::False },
        Formula::False => if pos { Formula::False } else { Formula::True },
        Formula::And(fs) | Formula::Or(fs) => {
            let parts = fs.iter().map(|g| nnf_pol(g, pos)).collect();
            if matches!(f, Formula::And(_)) == pos {
                Formula::And(parts)
            } else {
                Formula::Or(parts)
            }
        }
        Formula::Not(g) => nnf_pol(g, !pos),
        Formula::Implies(a, b) => {
            if pos {
                Formula::Or(vec![nnf_pol(a, false), nnf_pol(b, true)])
            } else {
                Formula::And(vec![nnf_pol(a, true), nnf_pol(b, false)])
            }
        }
        Formula::Equiv(a, b) => {
            if pos {
                Formula::And(vec![
                    Formula::Or(vec![nnf_pol(a, false), nnf_pol(b, true)]),
                    Formula::Or(vec![nnf_pol(a, true), nnf_pol(b, false)]),
                ])
            } else {
                Formula::Or(vec![
                    Formula::And(vec![nnf_pol(a, true), nnf_pol(b, false)]),
                    Formula::And(vec![nnf_pol(a, false), nnf_pol(b, true)]),
                ])
            }
        }
        Formula::Quant(q, v, g) => {
            let q = if pos { *q } else { q.dual() };
            Formula::Quant(q, *v, Box::new(nnf_pol(g, pos)))
        }
    }
}

fn dual_unchecked(f: &Formula) -> Formula {
    match f {
        Formula::Lit(l) => Formula::Lit(l.complement()),
        Formula::True => Formula::False,
        Formula::False => Formula::True,
        Formula::And(fs) => Formula::Or(fs.iter().map(dual_unchecked).collect()),
        Formula::Or(fs) => Formula::And(fs.iter().map(dual_unchecked).collect()),
        Formula::Quant(q, v, g) => Formula::Quant(q.dual(), *v, Box::new(dual_unchecked(g))),
        _ => unreachable!("dual of a non-NNF formula"),
    }
}

/// Switch quantifiers, `∧`/`∨`, `⊤`/`⊥` and complement literals. The input
/// must be a prenex formula with an NNF matrix; the result is equivalent to
/// its negation.
pub fn dual(f: &Formula) -> Result<Formula, NormalizeError> {
    let (_, matrix) = f.split_prefix();
    if !matrix.is_nnf() {
        return Err(NormalizeError::NotPrenex);
    }
    Ok(dual_unchecked(f))
}

/// Rename bound variables apart: every binder gets a distinct name that is
/// also distinct from all free variables. The first binder of a name keeps
/// it when that name is not free; later ones become `x_1`, `x_2`, ...
pub fn standardize(f: &Formula) -> Formula {
    standardize_with_origin(f).0
}

/// As [`standardize`], also returning the original name of every renamed
/// binder.
pub fn standardize_with_origin(f: &Formula) -> (Formula, BTreeMap<Symbol, Symbol>) {
    let free = f.free_vars();
    let mut fresh = FreshNames::new();
    fresh.reserve_all(f.all_var_names().iter().map(|s| s.as_str()));
    let mut kept = BTreeSet::new();
    let mut origin = BTreeMap::new();
    let mut env = Vec::new();
    let out = standardize_go(f, &free, &mut kept, &mut fresh, &mut env, &mut origin);
    (out, origin)
}

fn standardize_go(
    f: &Formula,
    free: &BTreeSet<Symbol>,
    kept: &mut BTreeSet<Symbol>,
    fresh: &mut FreshNames,
    env: &mut Vec<(Symbol, Symbol)>,
    origin: &mut BTreeMap<Symbol, Symbol>,
) -> Formula {
    match f {
        Formula::Lit(l) => {
            if env.is_empty() {
                return f.clone();
            }
            let rename = |t: &Term| -> Option<Term> {
                match t {
                    Term::Var(v) => env.iter().rev().find(|(from, _)| from == v).map(|(_, to)| Term::Var(*to)),
                    _ => None,
                }
            };
            Formula::Lit(l.map_terms(&|t| t.replace(&rename)))
        }
        Formula::True | Formula::False => f.clone(),
        Formula::And(fs) => Formula::And(fs.iter().map(|g| standardize_go(g, free, kept, fresh, env, origin)).collect()),
        Formula::Or(fs) => Formula::Or(fs.iter().map(|g| standardize_go(g, free, kept, fresh, env, origin)).collect()),
        Formula::Not(g) => Formula::not(standardize_go(g, free, kept, fresh, env, origin)),
        Formula::Implies(a, b) => {
            let a = standardize_go(a, free, kept, fresh, env, origin);
            Formula::implies(a, standardize_go(b, free, kept, fresh, env, origin))
        }
        Formula::Equiv(a, b) => {
            let a = standardize_go(a, free, kept, fresh, env, origin);
            Formula::equiv(a, standardize_go(b, free, kept, fresh, env, origin))
        }
        Formula::Quant(q, v, g) => {
            let name = if !free.contains(v) && kept.insert(*v) {
                *v
            } else {
                let n = fresh.fresh_like(v.as_str());
                origin.insert(n, *v);
                n
            };
            env.push((*v, name));
            let body = standardize_go(g, free, kept, fresh, env, origin);
            env.pop();
            Formula::Quant(*q, name, Box::new(body))
        }
    }
}

/// Pull the quantifiers of a standardized NNF out in pre-order.
fn prenex_parts(f: &Formula) -> (Vec<(Quantifier, Symbol)>, Formula) {
    fn go(f: &Formula, prefix: &mut Vec<(Quantifier, Symbol)>) -> Formula {
        match f {
            Formula::Quant(q, v, g) => {
                prefix.push((*q, *v));
                go(g, prefix)
            }
            Formula::And(fs) => Formula::And(fs.iter().map(|g| go(g, prefix)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|g| go(g, prefix)).collect()),
            other => other.clone(),
        }
    }
    let mut prefix = Vec::new();
    let matrix = go(f, &mut prefix);
    (prefix, matrix)
}

/// Prenex NNF of `f`: standardize, then pull quantifiers out in pre-order.
pub fn prenex(f: &Formula) -> Formula {
    let (prefix, matrix) = prenex_parts(&standardize(&nnf(f)));
    Formula::quantify(&prefix, matrix)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormalFormKind {
    Cnf,
    Dnf,
}

/// Quantifier prefix with a CNF or DNF matrix. In a DNF the clauses are
/// conjunctive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrenexNormalForm {
    pub prefix: Vec<(Quantifier, Symbol)>,
    pub matrix: Vec<Clause>,
    pub kind: NormalFormKind,
}

impl PrenexNormalForm {
    pub fn to_formula(&self) -> Formula {
        let m = match self.kind {
            NormalFormKind::Cnf => Formula::and(self.matrix.iter().map(Clause::to_disjunction).collect()),
            NormalFormKind::Dnf => Formula::or(self.matrix.iter().map(Clause::to_conjunction).collect()),
        };
        Formula::quantify(&self.prefix, m)
    }

    pub fn dual(&self) -> PrenexNormalForm {
        PrenexNormalForm {
            prefix: self.prefix.iter().map(|(q, v)| (q.dual(), *v)).collect(),
            matrix: self.matrix.iter().map(Clause::complement).collect(),
            kind: match self.kind {
                NormalFormKind::Cnf => NormalFormKind::Dnf,
                NormalFormKind::Dnf => NormalFormKind::Cnf,
            },
        }
    }

    fn vars_of(&self, q: Quantifier) -> BTreeSet<Symbol> {
        self.prefix.iter().filter(|(k, _)| *k == q).map(|(_, v)| *v).collect()
    }

    pub fn universal_vars(&self) -> BTreeSet<Symbol> {
        self.vars_of(Quantifier::Forall)
    }

    pub fn existential_vars(&self) -> BTreeSet<Symbol> {
        self.vars_of(Quantifier::Exists)
    }
}

fn dedup_literals(mut lits: Vec<Literal>) -> Vec<Literal> {
    let mut seen = HashSet::new();
    lits.retain(|l| seen.insert(l.clone()));
    lits
}

fn push_unique(out: &mut Vec<Clause>, seen: &mut HashSet<Vec<Literal>>, c: Clause) {
    if seen.insert(c.set_key()) {
        out.push(c);
    }
}

/// Matrix by naive distribution. For CNF `∧` is the union and `∨` the
/// product of clause sets; DNF swaps the roles.
fn distribute(f: &Formula, kind: NormalFormKind, limit: usize) -> Result<Vec<Clause>, NormalizeError> {
    let cnf = kind == NormalFormKind::Cnf;
    match f {
        Formula::Lit(l) => Ok(vec![Clause::new(vec![l.clone()])]),
        Formula::True => Ok(if cnf { vec![] } else { vec![Clause::empty()] }),
        Formula::False => Ok(if cnf { vec![Clause::empty()] } else { vec![] }),
        Formula::And(fs) | Formula::Or(fs) => {
            let union = matches!(f, Formula::And(_)) == cnf;
            let mut seen = HashSet::new();
            if union {
                let mut out = Vec::new();
                for g in fs {
                    for c in distribute(g, kind, limit)? {
                        push_unique(&mut out, &mut seen, c);
                    }
                    if out.len() > limit {
                        return Err(NormalizeError::ClauseLimit { limit });
                    }
                }
                Ok(out)
            } else {
                let mut acc = vec![Clause::empty()];
                for g in fs {
                    let part = distribute(g, kind, limit)?;
                    if acc.len().saturating_mul(part.len()) > limit {
                        return Err(NormalizeError::ClauseLimit { limit });
                    }
                    let mut next = Vec::with_capacity(acc.len() * part.len());
                    seen.clear();
                    for a in &acc {
                        for b in &part {
                            let mut lits = a.literals.clone();
                            lits.extend(b.literals.iter().cloned());
                            push_unique(&mut next, &mut seen, Clause::new(dedup_literals(lits)));
                        }
                    }
                    acc = next;
                }
                Ok(acc)
            }
        }
        _ => unreachable!("distribution over a non-NNF matrix"),
    }
}

fn normal_form(
    f: &Formula,
    kind: NormalFormKind,
    limit: usize,
) -> Result<(PrenexNormalForm, BTreeMap<Symbol, Symbol>), NormalizeError> {
    let (std, origin) = standardize_with_origin(&nnf(f));
    let (prefix, matrix) = prenex_parts(&std);
    let matrix = distribute(&matrix, kind, limit)?;
    Ok((PrenexNormalForm { prefix, matrix, kind }, origin))
}

pub fn cnf(f: &Formula) -> Result<PrenexNormalForm, NormalizeError> {
    cnf_with_limit(f, DEFAULT_MAX_CLAUSES)
}

pub fn cnf_with_limit(f: &Formula, limit: usize) -> Result<PrenexNormalForm, NormalizeError> {
    Ok(normal_form(f, NormalFormKind::Cnf, limit)?.0)
}

pub fn dnf(f: &Formula) -> Result<PrenexNormalForm, NormalizeError> {
    dnf_with_limit(f, DEFAULT_MAX_CLAUSES)
}

pub fn dnf_with_limit(f: &Formula, limit: usize) -> Result<PrenexNormalForm, NormalizeError> {
    Ok(normal_form(f, NormalFormKind::Dnf, limit)?.0)
}

/// Truth-value simplification of an NNF (quantifiers allowed): `⊥` is
/// dropped from disjunctions and `⊤` from conjunctions; a `⊤` disjunct or
/// `⊥` conjunct absorbs the whole connective. Nested connectives are not
/// flattened.
pub fn simplify_truth(f: &Formula) -> Formula {
    match f {
        Formula::And(fs) | Formula::Or(fs) => {
            let is_and = matches!(f, Formula::And(_));
            let (unit, zero) = if is_and { (Formula::True, Formula::False) } else { (Formula::False, Formula::True) };
            let mut parts = Vec::new();
            for g in fs {
                let g = simplify_truth(g);
                if g == zero {
                    return zero;
                }
                if g != unit {
                    parts.push(g);
                }
            }
            if is_and {
                Formula::and(parts)
            } else {
                Formula::or(parts)
            }
        }
        Formula::Quant(q, v, g) => match simplify_truth(g) {
            t @ (Formula::True | Formula::False) => t,
            g => Formula::Quant(*q, *v, Box::new(g)),
        },
        Formula::Not(g) => Formula::not(simplify_truth(g)),
        other => other.clone(),
    }
}

/// Result of freezing the free variables of an interpolation problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frozen {
    pub f: Formula,
    pub g: Formula,
    /// Placeholders of variables free in both inputs.
    pub shared: BTreeSet<Symbol>,
    pub var_to_const: BTreeMap<Symbol, Symbol>,
}

impl Frozen {
    pub fn const_to_var(&self) -> BTreeMap<Symbol, Symbol> {
        self.var_to_const.iter().map(|(v, c)| (*c, *v)).collect()
    }
}

/// Replace every free variable of `f` and `g` by a dedicated fresh
/// constant `c_x`. `fresh` must already reserve every name of both inputs.
pub fn freeze_free_vars(f: &Formula, g: &Formula, fresh: &mut FreshNames) -> Frozen {
    let fv = f.free_vars();
    let gv = g.free_vars();
    let mut var_to_const = BTreeMap::new();
    for v in fv.union(&gv) {
        let c = fresh.fresh_like(&format!("c_{}", v.as_str().to_ascii_lowercase()));
        var_to_const.insert(*v, c);
    }
    let map: BTreeMap<Symbol, Term> = var_to_const.iter().map(|(v, c)| (*v, Term::App(*c, vec![]))).collect();
    let shared = fv.intersection(&gv).map(|v| var_to_const[v]).collect();
    Frozen { f: f.substitute_free(&map), g: g.substitute_free(&map), shared, var_to_const }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClausePolarity {
    AsStated,
    Negated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClausificationResult {
    pub clauses: Vec<Clause>,
    pub skolem_functions: BTreeSet<Symbol>,
    pub universal_vars: BTreeSet<Symbol>,
}

/// Clausal form of a sentence (or of its negation): cnf, then Skolem terms
/// `skN(u..)` over the universal variables preceding each existential one.
/// Skolem names come from `fresh`, so two calls sharing it never collide.
pub fn skolemize_clausify(
    f: &Formula,
    polarity: ClausePolarity,
    fresh: &mut FreshNames,
    limit: usize,
) -> Result<ClausificationResult, NormalizeError> {
    let free = f.free_vars();
    if !free.is_empty() {
        return Err(NormalizeError::NotSentence(free.iter().map(|s| s.as_str().to_owned()).collect()));
    }
    fresh.reserve_all(f.all_names().iter().map(|s| s.as_str()));
    let input = match polarity {
        ClausePolarity::AsStated => f.clone(),
        ClausePolarity::Negated => Formula::not(f.clone()),
    };
    let (pnf, origin) = normal_form(&input, NormalFormKind::Cnf, limit)?;
    let mut universals = Vec::new();
    let mut sk = Substitution::new();
    let mut skolem_functions = BTreeSet::new();
    for (q, v) in &pnf.prefix {
        match q {
            Quantifier::Forall => universals.push(*v),
            Quantifier::Exists => {
                let name = fresh.fresh("sk");
                skolem_functions.insert(name);
                sk.insert_raw(*v, Term::App(name, universals.iter().map(|u| Term::Var(*u)).collect()));
            }
        }
    }
    let mut universal_vars = BTreeSet::new();
    let clauses: Vec<Clause> = pnf
        .matrix
        .iter()
        .map(|c| {
            let c = restore_names(&c.apply(&sk), &origin);
            universal_vars.extend(c.vars());
            c
        })
        .collect();
    Ok(ClausificationResult { clauses, skolem_functions, universal_vars })
}

/// Give clause variables back their source names where that causes no
/// clash inside the clause.
fn restore_names(c: &Clause, origin: &BTreeMap<Symbol, Symbol>) -> Clause {
    let vars = c.vars();
    let mut taken: BTreeSet<Symbol> = vars.iter().filter(|v| !origin.contains_key(v)).copied().collect();
    let mut s = Substitution::new();
    for v in &vars {
        if let Some(o) = origin.get(v) {
            if taken.insert(*o) {
                s.insert_raw(*v, Term::Var(*o));
            } else {
                taken.insert(*v);
            }
        }
    }
    if s.is_empty() {
        c.clone()
    } else {
        c.apply(&s)
    }
}

/// Reflexivity, symmetry, transitivity and one substitutivity clause per
/// argument position of every function and non-equality predicate.
pub fn equality_axioms(sig: &Signature) -> Vec<Clause> {
    let v = |n: &str| Term::var(n);
    let eq = |pos: bool, a: Term, b: Term| Literal { positive: pos, pred: Symbol::new(EQUALITY), args: vec![a, b] };
    let mut out = vec![
        Clause::new(vec![eq(true, v("x"), v("x"))]),
        Clause::new(vec![eq(false, v("x"), v("y")), eq(true, v("y"), v("x"))]),
        Clause::new(vec![eq(false, v("x"), v("y")), eq(false, v("y"), v("z")), eq(true, v("x"), v("z"))]),
    ];
    let args = |n: usize, i: usize, at: Term| -> Vec<Term> {
        (0..n).map(|k| if k == i { at.clone() } else { Term::var(&format!("z{}", k + 1)) }).collect()
    };
    for (f, &n) in &sig.functions {
        for i in 0..n {
            out.push(Clause::new(vec![
                eq(false, v("x"), v("y")),
                eq(true, Term::App(*f, args(n, i, v("x"))), Term::App(*f, args(n, i, v("y")))),
            ]));
        }
    }
    for (p, &n) in &sig.predicates {
        if p.as_str() == EQUALITY {
            continue;
        }
        for i in 0..n {
            out.push(Clause::new(vec![
                eq(false, v("x"), v("y")),
                Literal { positive: false, pred: *p, args: args(n, i, v("x")) },
                Literal { positive: true, pred: *p, args: args(n, i, v("y")) },
            ]));
        }
    }
    out
}
