//! Finite structures: evaluation of formulas, random and exhaustive model
//! checks, and truth tables for ground clause sets.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use crate::logic::{Clause, Formula, Literal, Quantifier, Signature, Term, EQUALITY};
use crate::symbol::Symbol;

/// An interpretation over the domain `0..size`. Tables are indexed by the
/// argument tuple read as a base-`size` number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    pub size: usize,
    pub functions: BTreeMap<Symbol, Vec<usize>>,
    pub predicates: BTreeMap<Symbol, Vec<bool>>,
}

fn index(args: &[usize], size: usize) -> usize {
    args.iter().fold(0, |acc, a| acc * size + a)
}

impl Structure {
    pub fn random<R: Rng>(sig: &Signature, size: usize, rng: &mut R) -> Structure {
        let functions =
            sig.functions.iter().map(|(f, a)| (*f, (0..size.pow(*a as u32)).map(|_| rng.gen_range(0..size)).collect())).collect();
        let predicates = sig
            .predicates
            .iter()
            .filter(|(p, _)| p.as_str() != EQUALITY)
            .map(|(p, a)| (*p, (0..size.pow(*a as u32)).map(|_| rng.gen_bool(0.5)).collect()))
            .collect();
        Structure { size, functions, predicates }
    }

    pub fn term(&self, t: &Term, env: &BTreeMap<Symbol, usize>) -> usize {
        match t {
            Term::Var(v) => env.get(v).copied().unwrap_or(0),
            Term::App(f, args) => {
                let vals: Vec<usize> = args.iter().map(|a| self.term(a, env)).collect();
                self.functions.get(f).map_or(0, |tab| tab[index(&vals, self.size)])
            }
        }
    }

    pub fn literal(&self, l: &Literal, env: &BTreeMap<Symbol, usize>) -> bool {
        let vals: Vec<usize> = l.args.iter().map(|a| self.term(a, env)).collect();
        let atom = if l.pred.as_str() == EQUALITY && vals.len() == 2 {
            vals[0] == vals[1]
        } else {
            self.predicates.get(&l.pred).is_some_and(|tab| tab[index(&vals, self.size)])
        };
        atom == l.positive
    }

    /// Truth of `f`; free variables read from `env`, missing ones as 0.
    pub fn eval(&self, f: &Formula, env: &mut BTreeMap<Symbol, usize>) -> bool {
        match f {
            Formula::Lit(l) => self.literal(l, env),
            Formula::True => true,
            Formula::False => false,
            Formula::And(fs) => fs.iter().all(|g| self.eval(g, env)),
            Formula::Or(fs) => fs.iter().any(|g| self.eval(g, env)),
            Formula::Not(g) => !self.eval(g, env),
            Formula::Implies(a, b) => !self.eval(a, env) || self.eval(b, env),
            Formula::Equiv(a, b) => self.eval(a, env) == self.eval(b, env),
            Formula::Quant(q, v, g) => {
                let saved = env.get(v).copied();
                let mut result = *q == Quantifier::Forall;
                for d in 0..self.size {
                    env.insert(*v, d);
                    if self.eval(g, env) != result {
                        result = !result;
                        break;
                    }
                }
                match saved {
                    Some(s) => env.insert(*v, s),
                    None => env.remove(v),
                };
                result
            }
        }
    }

    /// Truth under every assignment of the free variables.
    pub fn satisfies_closure(&self, f: &Formula) -> bool {
        let vars: Vec<Symbol> = f.free_vars().into_iter().collect();
        let ok = assignments(&vars, self.size).all(|mut env| self.eval(f, &mut env));
        ok
    }
}

fn assignments(vars: &[Symbol], size: usize) -> impl Iterator<Item = BTreeMap<Symbol, usize>> + '_ {
    let total = size.pow(vars.len() as u32);
    (0..total).map(move |mut n| {
        let mut env = BTreeMap::new();
        for v in vars {
            env.insert(*v, n % size);
            n /= size;
        }
        env
    })
}

/// Whether `a` and `b` agree in `samples` random structures of size 1 and
/// 2, under every assignment of their free variables. `None` if the pair
/// has no consistent signature.
pub fn agree_on_samples<R: Rng>(a: &Formula, b: &Formula, samples: usize, rng: &mut R) -> Option<bool> {
    let sig = Signature::collect([a, b]).ok()?;
    let vars: Vec<Symbol> = a.free_vars().union(&b.free_vars()).copied().collect();
    for i in 0..samples {
        let m = Structure::random(&sig, 1 + i % 2, rng);
        for mut env in assignments(&vars, m.size) {
            if m.eval(a, &mut env.clone()) != m.eval(b, &mut env) {
                return Some(false);
            }
        }
    }
    Some(true)
}

/// Satisfiability of a ground clause set by enumerating assignments to its
/// atoms.
pub fn ground_satisfiable(clauses: &[Clause]) -> bool {
    let atoms: Vec<Literal> = clauses
        .iter()
        .flat_map(|c| c.literals.iter().map(|l| Literal { positive: true, ..l.clone() }))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    assert!(atoms.len() < 24, "truth table over {} atoms", atoms.len());
    let pos: BTreeMap<&Literal, usize> = atoms.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let encoded: Vec<Vec<(usize, bool)>> = clauses
        .iter()
        .map(|c| {
            c.literals
                .iter()
                .map(|l| (pos[&Literal { positive: true, ..l.clone() }], l.positive))
                .collect()
        })
        .collect();
    (0u32..1 << atoms.len()).any(|bits| encoded.iter().all(|c| c.iter().any(|&(i, s)| ((bits >> i) & 1 == 1) == s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_clause_list, parse_formula};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn evaluates_quantifiers() {
        let sig = Signature::collect([&parse_formula("p(a)").unwrap()]).unwrap();
        let m = Structure { size: 2, functions: BTreeMap::from([(Symbol::new("a"), vec![1])]), predicates: BTreeMap::from([(Symbol::new("p"), vec![false, true])]) };
        assert_eq!(sig.predicates.len(), 1);
        assert!(m.satisfies_closure(&parse_formula("p(a) & (? [X] : ~p(X)) & ~(! [X] : p(X))").unwrap()));
        assert!(m.satisfies_closure(&parse_formula("! [X] : (X = a | ~p(X))").unwrap()));
    }

    #[test]
    fn sample_agreement() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = parse_formula("~(! [X] : (p(X) => q(X)))").unwrap();
        let b = parse_formula("? [X] : (p(X) & ~q(X))").unwrap();
        assert_eq!(agree_on_samples(&a, &b, 50, &mut rng), Some(true));
        let c = parse_formula("! [X] : (p(X) & ~q(X))").unwrap();
        assert_eq!(agree_on_samples(&a, &c, 50, &mut rng), Some(false));
    }

    #[test]
    fn truth_tables() {
        assert!(!ground_satisfiable(&parse_clause_list("p | q. ~p. ~q.").unwrap()));
        assert!(ground_satisfiable(&parse_clause_list("p | q. ~p.").unwrap()));
        assert!(!ground_satisfiable(&parse_clause_list("$false.").unwrap()));
        assert!(ground_satisfiable(&[]));
    }
}
