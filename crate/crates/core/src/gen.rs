//! Seeded instance generators: random formulas, ground clause sets and
//! entailment problems `F ⊨ G` with prescribed syntactic properties.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::logic::{Clause, Formula, Literal, Quantifier, Substitution, Term};
use crate::restriction::{check_vx_preconditions, is_horn, is_u_range_restricted};
use crate::symbol::Symbol;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const VARS: [&str; 3] = ["X", "Y", "Z"];

fn random_term<R: Rng>(rng: &mut R, vars: usize, depth: usize) -> Term {
    match rng.gen_range(0..10) {
        0..=5 if vars > 0 => Term::var(VARS[rng.gen_range(0..vars)]),
        6 | 7 if depth > 0 => Term::app("f", vec![random_term(rng, vars, depth - 1)]),
        8 => Term::constant("b"),
        _ => Term::constant("a"),
    }
}

fn random_literal<R: Rng>(rng: &mut R, vars: usize) -> Literal {
    let positive = rng.gen_bool(0.5);
    match rng.gen_range(0..4) {
        0 => Literal::new(positive, "r", vec![]),
        1 => Literal::new(positive, "q", vec![random_term(rng, vars, 1), random_term(rng, vars, 1)]),
        _ => Literal::new(positive, "p", vec![random_term(rng, vars, 1)]),
    }
}

/// Random formula of connective depth at most `depth` over `p/1`, `q/2`,
/// `r/0`, `f/1`, constants `a, b` and at most `vars` variables, which may
/// occur free.
pub fn random_formula<R: Rng>(rng: &mut R, depth: usize, vars: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..20) {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::Lit(random_literal(rng, vars)),
        };
    }
    let sub = |rng: &mut R| random_formula(rng, depth - 1, vars);
    match rng.gen_range(0..8) {
        0 => Formula::not(sub(rng)),
        1 | 2 => {
            let n = rng.gen_range(2..=3);
            Formula::And((0..n).map(|_| sub(rng)).collect())
        }
        3 | 4 => {
            let n = rng.gen_range(2..=3);
            Formula::Or((0..n).map(|_| sub(rng)).collect())
        }
        5 => {
            if rng.gen_bool(0.7) {
                Formula::implies(sub(rng), sub(rng))
            } else {
                Formula::equiv(sub(rng), sub(rng))
            }
        }
        _ if vars > 0 => {
            let v = Symbol::new(VARS[rng.gen_range(0..vars)]);
            let q = if rng.gen_bool(0.5) { Quantifier::Forall } else { Quantifier::Exists };
            Formula::Quant(q, v, Box::new(sub(rng)))
        }
        _ => sub(rng),
    }
}

/// Close free variables with random quantifiers.
pub fn close<R: Rng>(rng: &mut R, f: Formula) -> Formula {
    f.free_vars().into_iter().fold(f, |g, v| {
        let q = if rng.gen_bool(0.5) { Quantifier::Forall } else { Quantifier::Exists };
        Formula::Quant(q, v, Box::new(g))
    })
}

/// Random ground clauses over at most `max_atoms` atoms.
pub fn random_ground_clauses<R: Rng>(rng: &mut R, max_atoms: usize) -> Vec<Clause> {
    let pool = [
        Literal::pos("p", vec![]),
        Literal::pos("q", vec![]),
        Literal::pos("r", vec![Term::constant("a")]),
        Literal::pos("r", vec![Term::constant("b")]),
        Literal::pos("s", vec![Term::constant("a"), Term::constant("b")]),
        Literal::pos("s", vec![Term::constant("b"), Term::constant("a")]),
    ];
    let n_atoms = rng.gen_range(1..=max_atoms.clamp(1, pool.len()));
    let atoms: Vec<&Literal> = pool.choose_multiple(rng, n_atoms).collect();
    let n = rng.gen_range(1..=3 * n_atoms + 2);
    (0..n)
        .map(|_| {
            let len = rng.gen_range(1..=3.min(n_atoms));
            let mut lits: Vec<Literal> = Vec::new();
            for a in atoms.choose_multiple(rng, len) {
                let mut l = (*a).clone();
                l.positive = rng.gen_bool(0.5);
                lits.push(l);
            }
            Clause::new(lits)
        })
        .collect()
}

/// An entailment problem; `free` are the variables free in both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub f: Formula,
    pub g: Formula,
    pub free: BTreeSet<Symbol>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `F` U-range-restricted.
    URestricted,
    /// Sentences, `F` and `¬G` U-range-restricted.
    Sentences,
    /// One free variable, preconditions of the free-variable case.
    FreeVariable,
    /// `F` Horn.
    Horn,
    /// `F` Horn and U-range-restricted, `¬G` U-range-restricted.
    HornRestricted,
}

struct KbRule {
    body: Vec<Literal>,
    head: Vec<Literal>,
    exists: Vec<Symbol>,
}

impl KbRule {
    fn formula(&self) -> Formula {
        let mut vars = BTreeSet::new();
        for l in &self.body {
            vars.extend(l.vars());
        }
        let head = Formula::or(self.head.iter().cloned().map(Formula::Lit).collect());
        let head = self.exists.iter().rev().fold(head, |h, v| Formula::Quant(Quantifier::Exists, *v, Box::new(h)));
        let m = Formula::implies(Formula::and(self.body.iter().cloned().map(Formula::Lit).collect()), head);
        vars.iter().rev().fold(m, |g, v| Formula::Quant(Quantifier::Forall, *v, Box::new(g)))
    }
}

const CONSTANTS: [&str; 3] = ["a", "b", "c"];
const PLACEHOLDER: &str = "w0";
const FREE_VAR: &str = "W";

fn atom<R: Rng>(rng: &mut R, preds: &[(Symbol, usize)], args: &[Term]) -> Literal {
    let pred = *preds.choose(rng).unwrap();
    Literal { positive: true, pred: pred.0, args: (0..pred.1).map(|_| args.choose(rng).unwrap().clone()).collect() }
}

/// All ground instances of `rule` whose body holds in `facts`.
fn fire(rule: &KbRule, facts: &BTreeSet<Literal>) -> Vec<Literal> {
    fn go(body: &[Literal], facts: &BTreeSet<Literal>, s: Substitution, out: &mut Vec<Substitution>) {
        let Some((first, rest)) = body.split_first() else {
            out.push(s);
            return;
        };
        for f in facts {
            let mut s2 = s.clone();
            if first.apply(&s).match_onto(f, &mut s2) {
                go(rest, facts, s2, out);
            }
        }
    }
    let mut subs = Vec::new();
    go(&rule.body, facts, Substitution::new(), &mut subs);
    subs.into_iter().map(|s| rule.head[0].apply(&s)).filter(|l| l.is_ground()).collect()
}

/// One attempt at building an instance of `family`.
fn attempt<R: Rng>(rng: &mut R, family: Family) -> Option<Instance> {
    let horn = matches!(family, Family::Horn | Family::HornRestricted);
    let free = family == Family::FreeVariable;
    let mut preds: Vec<(Symbol, usize)> =
        [("p", 1), ("q", 2), ("r", 1), ("s", 2)].iter().map(|(p, a)| (Symbol::new(p), *a)).collect();
    preds.shuffle(rng);
    preds.truncate(rng.gen_range(2..=4));
    let mut consts: Vec<Term> = CONSTANTS.iter().map(|c| Term::constant(c)).collect();
    if free {
        consts.push(Term::constant(PLACEHOLDER));
    }

    let mut facts: BTreeSet<Literal> = BTreeSet::new();
    if free {
        let unary: Vec<_> = preds.iter().filter(|p| p.1 == 1).copied().collect();
        let p = *unary.choose(rng).unwrap_or(&preds[0]);
        let mut l = atom(rng, std::slice::from_ref(&p), &consts[..3]);
        l.args[0] = Term::constant(PLACEHOLDER);
        facts.insert(l);
    }
    for _ in 0..rng.gen_range(1..=3) {
        facts.insert(atom(rng, &preds, &consts[..3]));
    }
    let vars = [Term::var("X"), Term::var("Y")];
    let mut rules = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let body: Vec<Literal> = (0..rng.gen_range(1..=2)).map(|_| atom(rng, &preds, &vars)).collect();
        let mut body_vars: Vec<Term> = body.iter().flat_map(|l| l.vars()).map(Term::Var).collect();
        body_vars.sort();
        body_vars.dedup();
        let mut head_args = body_vars.clone();
        let mut exists = Vec::new();
        if !horn && rng.gen_bool(0.2) {
            exists.push(Symbol::new("Z"));
            head_args.push(Term::var("Z"));
        }
        if head_args.is_empty() {
            head_args = consts[..3].to_vec();
        }
        let mut head = vec![atom(rng, &preds, &head_args)];
        if !horn && rng.gen_bool(0.2) {
            head.push(atom(rng, &preds, &head_args));
        }
        rules.push(KbRule { body, head, exists });
    }

    let mut derived = facts.clone();
    for _ in 0..3 {
        let mut new = Vec::new();
        for r in rules.iter().filter(|r| r.head.len() == 1 && r.exists.is_empty()) {
            new.extend(fire(r, &derived));
        }
        let before = derived.len();
        derived.extend(new);
        if derived.len() == before || derived.len() > 40 {
            break;
        }
    }
    let fresh_facts: Vec<&Literal> = derived.difference(&facts).collect();
    let pool: Vec<&Literal> = if fresh_facts.is_empty() || rng.gen_bool(0.2) { derived.iter().collect() } else { fresh_facts };

    let g_only = [Symbol::new("t"), Symbol::new("u")];
    let mut parts: Vec<Formula> = Vec::new();
    let n_parts = rng.gen_range(1..=2);
    for k in 0..n_parts {
        let kind = if free && k == 0 { 0 } else { rng.gen_range(0..3) };
        match kind {
            0 => {
                let candidates: Vec<&&Literal> =
                    pool.iter().filter(|l| !free || l.args.contains(&Term::constant(PLACEHOLDER))).collect();
                if candidates.is_empty() {
                    return None;
                }
                let chosen: Vec<Literal> =
                    {
                    let k = rng.gen_range(1..=2);
                    candidates.choose_multiple(rng, k)
                }.map(|l| (**l).clone()).collect();
                let mut rename: BTreeMap<Term, Symbol> = BTreeMap::new();
                let names = ["E1", "E2", "E3", "E4"];
                for l in &chosen {
                    for a in &l.args {
                        if *a != Term::constant(PLACEHOLDER) && !rename.contains_key(a) && rename.len() < 4 && rng.gen_bool(0.5) {
                            rename.insert(a.clone(), Symbol::new(names[rename.len()]));
                        }
                    }
                }
                let conj = Formula::and(
                    chosen.iter().map(|l| Formula::Lit(l.map_terms(&|t| rename.get(t).map_or(t.clone(), |v| Term::Var(*v))))).collect(),
                );
                let mut cq = rename.values().rev().fold(conj, |g, v| Formula::Quant(Quantifier::Exists, *v, Box::new(g)));
                if rng.gen_bool(0.3) {
                    let c = if free { Term::constant(PLACEHOLDER) } else { consts[rng.gen_range(0..3)].clone() };
                    cq = Formula::Or(vec![cq, Formula::atom(g_only[0].as_str(), vec![c])]);
                }
                parts.push(cq);
            }
            1 => {
                let r = rules.choose(rng).unwrap();
                let mut head = r.head.clone();
                let v = r.body.iter().flat_map(|l| l.vars()).next();
                let arg = v.map_or_else(|| consts[0].clone(), Term::Var);
                head.push(Literal::pos(g_only[1].as_str(), vec![arg]));
                parts.push(KbRule { body: r.body.clone(), head, exists: r.exists.clone() }.formula());
            }
            _ => {
                let unary: Vec<&&Literal> = pool.iter().filter(|l| l.args.len() == 1).collect();
                let Some(d) = unary.choose(rng) else { continue };
                let y = Term::var("Y");
                let guard = Formula::Quant(
                    Quantifier::Forall,
                    Symbol::new("Y"),
                    Box::new(Formula::implies(
                        Formula::atom(d.pred.as_str(), vec![y.clone()]),
                        Formula::atom(g_only[0].as_str(), vec![y]),
                    )),
                );
                parts.push(Formula::implies(guard, Formula::atom(g_only[0].as_str(), vec![d.args[0].clone()])));
            }
        }
    }
    if parts.is_empty() {
        return None;
    }

    let mut f_parts: Vec<Formula> = facts.into_iter().map(Formula::Lit).collect();
    f_parts.extend(rules.iter().map(KbRule::formula));
    let mut f = Formula::and(f_parts);
    let mut g = Formula::and(parts);
    let mut free_vars = BTreeSet::new();
    if free {
        let w = Symbol::new(FREE_VAR);
        let unfreeze = |h: &Formula| {
            h.replace_terms(&|t| (*t == Term::constant(PLACEHOLDER)).then_some(Term::Var(w)))
        };
        f = unfreeze(&f);
        g = unfreeze(&g);
        free_vars.insert(w);
    }
    let ok = match family {
        Family::URestricted => is_u_range_restricted(&f).is_ok_and(|r| r.verdict),
        Family::Sentences => u_rr(&f) && u_rr(&Formula::not(g.clone())),
        Family::FreeVariable => check_vx_preconditions(&f, &g, &free_vars).is_ok_and(|r| r.verdict),
        Family::Horn => is_horn(&f),
        Family::HornRestricted => is_horn(&f) && u_rr(&f) && u_rr(&Formula::not(g.clone())),
    };
    ok.then_some(Instance { f, g, free: free_vars })
}

fn u_rr(f: &Formula) -> bool {
    is_u_range_restricted(f).is_ok_and(|r| r.verdict)
}

/// Instance of `family` determined by `seed`.
pub fn instance(family: Family, seed: u64) -> Instance {
    let mut rng = rng(seed ^ (family as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    loop {
        if let Some(i) = attempt(&mut rng, family) {
            return i;
        }
    }
}
