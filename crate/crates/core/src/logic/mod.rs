//! First-order syntax: terms, literals, clauses and formulas, together with
//! the vocabulary and variable-occurrence queries used by the rest of the
//! crate.

mod smax;
mod unify;

pub use smax::{smax, smax_clause, MaxFilter};
pub use unify::{match_term, unify, unify_args, Substitution};

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::symbol::Symbol;

/// Name of the reserved equality predicate.
pub const EQUALITY: &str = "=";

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Term {
    Var(Symbol),
    /// Function application; constants have no arguments.
    App(Symbol, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Symbol::new(name))
    }

    pub fn constant(name: &str) -> Term {
        Term::App(Symbol::new(name), Vec::new())
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(Symbol::new(name), args)
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Outermost function symbol, if any.
    pub fn head(&self) -> Option<Symbol> {
        match self {
            Term::Var(_) => None,
            Term::App(f, _) => Some(*f),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => args.iter().map(|a| a.depth() + 1).max().unwrap_or(0),
        }
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Symbol>) {
        match self {
            Term::Var(v) => {
                out.insert(*v);
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn collect_functions(&self, out: &mut BTreeSet<Symbol>) {
        if let Term::App(f, args) = self {
            out.insert(*f);
            args.iter().for_each(|a| a.collect_functions(out));
        }
    }

    pub fn occurs(&self, v: Symbol) -> bool {
        match self {
            Term::Var(w) => *w == v,
            Term::App(_, args) => args.iter().any(|a| a.occurs(v)),
        }
    }

    /// `true` if `sub` occurs in `self` (including `self == sub`).
    pub fn contains(&self, sub: &Term) -> bool {
        if self == sub {
            return true;
        }
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().any(|a| a.contains(sub)),
        }
    }

    pub fn subterms<'a>(&'a self, out: &mut Vec<&'a Term>) {
        out.push(self);
        if let Term::App(_, args) = self {
            args.iter().for_each(|a| a.subterms(out));
        }
    }

    /// Replace every occurrence of a mapped term, outermost first.
    pub fn replace(&self, map: &dyn Fn(&Term) -> Option<Term>) -> Term {
        if let Some(t) = map(self) {
            return t;
        }
        match self {
            Term::Var(_) => self.clone(),
            Term::App(f, args) => Term::App(*f, args.iter().map(|a| a.replace(map)).collect()),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Literal {
    pub positive: bool,
    pub pred: Symbol,
    pub args: Vec<Term>,
}

impl Literal {
    pub fn new(positive: bool, pred: &str, args: Vec<Term>) -> Literal {
        Literal { positive, pred: Symbol::new(pred), args }
    }

    pub fn pos(pred: &str, args: Vec<Term>) -> Literal {
        Literal::new(true, pred, args)
    }

    pub fn neg(pred: &str, args: Vec<Term>) -> Literal {
        Literal::new(false, pred, args)
    }

    pub fn complement(&self) -> Literal {
        Literal { positive: !self.positive, pred: self.pred, args: self.args.clone() }
    }

    pub fn is_complement_of(&self, other: &Literal) -> bool {
        self.positive != other.positive && self.pred == other.pred && self.args == other.args
    }

    pub fn same_atom(&self, other: &Literal) -> bool {
        self.pred == other.pred && self.args == other.args
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    pub fn vars(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.args.iter().for_each(|a| a.collect_vars(&mut out));
        out
    }

    pub fn map_terms(&self, f: &dyn Fn(&Term) -> Term) -> Literal {
        Literal { positive: self.positive, pred: self.pred, args: self.args.iter().map(f).collect() }
    }

    pub fn apply(&self, s: &Substitution) -> Literal {
        self.map_terms(&|t| s.apply(t))
    }
}

/// A list of literals. Read as a disjunction in CNF contexts and as a
/// conjunction in DNF contexts; the empty clause is false resp. true.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Clause {
    pub literals: Vec<Literal>,
}

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Clause {
        Clause { literals }
    }

    pub fn empty() -> Clause {
        Clause::default()
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn vars(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        for l in &self.literals {
            l.args.iter().for_each(|a| a.collect_vars(&mut out));
        }
        out
    }

    /// Variables occurring in a literal of the given sign.
    pub fn vars_with_sign(&self, positive: bool) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        for l in self.literals.iter().filter(|l| l.positive == positive) {
            l.args.iter().for_each(|a| a.collect_vars(&mut out));
        }
        out
    }

    pub fn is_negative(&self) -> bool {
        self.literals.iter().all(|l| !l.positive)
    }

    pub fn is_horn(&self) -> bool {
        self.literals.iter().filter(|l| l.positive).count() <= 1
    }

    pub fn is_ground(&self) -> bool {
        self.literals.iter().all(Literal::is_ground)
    }

    pub fn is_tautology(&self) -> bool {
        self.literals.iter().any(|l| self.literals.iter().any(|k| l.is_complement_of(k)))
    }

    /// Literal set in canonical order; equal keys mean equal as sets.
    pub fn set_key(&self) -> Vec<Literal> {
        let mut v = self.literals.clone();
        v.sort();
        v.dedup();
        v
    }

    pub fn apply(&self, s: &Substitution) -> Clause {
        Clause { literals: self.literals.iter().map(|l| l.apply(s)).collect() }
    }

    pub fn complement(&self) -> Clause {
        Clause { literals: self.literals.iter().map(Literal::complement).collect() }
    }

    pub fn to_disjunction(&self) -> Formula {
        Formula::or(self.literals.iter().cloned().map(Formula::Lit).collect())
    }

    pub fn to_conjunction(&self) -> Formula {
        Formula::and(self.literals.iter().cloned().map(Formula::Lit).collect())
    }
}

/// Serialized in clause syntax.
impl serde::Serialize for Clause {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Quantifier {
    pub fn dual(self) -> Quantifier {
        match self {
            Quantifier::Forall => Quantifier::Exists,
            Quantifier::Exists => Quantifier::Forall,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Formula {
    Lit(Literal),
    True,
    False,
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Not(Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Equiv(Box<Formula>, Box<Formula>),
    Quant(Quantifier, Symbol, Box<Formula>),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Polarity {
    Pos,
    Neg,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Pos => Polarity::Neg,
            Polarity::Neg => Polarity::Pos,
        }
    }

    pub fn of(positive: bool) -> Polarity {
        if positive {
            Polarity::Pos
        } else {
            Polarity::Neg
        }
    }
}

/// `fun(F)` and `pred(F)` of a formula.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Vocabulary {
    pub functions: BTreeSet<Symbol>,
    pub predicates: BTreeSet<(Symbol, Polarity)>,
}

impl Vocabulary {
    pub fn is_subset(&self, other: &Vocabulary) -> bool {
        self.functions.is_subset(&other.functions) && self.predicates.is_subset(&other.predicates)
    }

    pub fn intersection(&self, other: &Vocabulary) -> Vocabulary {
        Vocabulary {
            functions: self.functions.intersection(&other.functions).copied().collect(),
            predicates: self.predicates.intersection(&other.predicates).copied().collect(),
        }
    }

    pub fn predicate_symbols(&self) -> BTreeSet<Symbol> {
        self.predicates.iter().map(|(p, _)| *p).collect()
    }
}

impl Formula {
    pub fn lit(l: Literal) -> Formula {
        Formula::Lit(l)
    }

    pub fn atom(pred: &str, args: Vec<Term>) -> Formula {
        Formula::Lit(Literal::pos(pred, args))
    }

    pub fn neg_atom(pred: &str, args: Vec<Term>) -> Formula {
        Formula::Lit(Literal::neg(pred, args))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn equiv(a: Formula, b: Formula) -> Formula {
        Formula::Equiv(Box::new(a), Box::new(b))
    }

    pub fn forall(v: &str, f: Formula) -> Formula {
        Formula::Quant(Quantifier::Forall, Symbol::new(v), Box::new(f))
    }

    pub fn exists(v: &str, f: Formula) -> Formula {
        Formula::Quant(Quantifier::Exists, Symbol::new(v), Box::new(f))
    }

    /// Conjunction; a single conjunct is returned as is and the empty
    /// conjunction is `True`.
    pub fn and(mut parts: Vec<Formula>) -> Formula {
        match parts.len() {
            0 => Formula::True,
            1 => parts.pop().unwrap(),
            _ => Formula::And(parts),
        }
    }

    pub fn or(mut parts: Vec<Formula>) -> Formula {
        match parts.len() {
            0 => Formula::False,
            1 => parts.pop().unwrap(),
            _ => Formula::Or(parts),
        }
    }

    pub fn quantify(prefix: &[(Quantifier, Symbol)], matrix: Formula) -> Formula {
        prefix
            .iter()
            .rev()
            .fold(matrix, |acc, (q, v)| Formula::Quant(*q, *v, Box::new(acc)))
    }

    pub fn free_vars(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        self.walk_free_vars(&mut bound, &mut out);
        out
    }

    fn walk_free_vars(&self, bound: &mut Vec<Symbol>, out: &mut BTreeSet<Symbol>) {
        match self {
            Formula::Lit(l) => {
                let mut vs = BTreeSet::new();
                l.args.iter().for_each(|a| a.collect_vars(&mut vs));
                out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
            }
            Formula::True | Formula::False => {}
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.walk_free_vars(bound, out)),
            Formula::Not(f) => f.walk_free_vars(bound, out),
            Formula::Implies(a, b) | Formula::Equiv(a, b) => {
                a.walk_free_vars(bound, out);
                b.walk_free_vars(bound, out);
            }
            Formula::Quant(_, v, f) => {
                bound.push(*v);
                f.walk_free_vars(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Visit every literal occurrence with its polarity and the variables
    /// bound at that point.
    pub fn for_each_literal(&self, f: &mut dyn FnMut(&Literal, Polarity, &[Symbol])) {
        let mut bound = Vec::new();
        self.walk_literals(Polarity::Pos, &mut bound, f);
    }

    fn walk_literals(
        &self,
        pol: Polarity,
        bound: &mut Vec<Symbol>,
        f: &mut dyn FnMut(&Literal, Polarity, &[Symbol]),
    ) {
        match self {
            Formula::Lit(l) => {
                let p = if l.positive { pol } else { pol.flip() };
                f(l, p, bound);
            }
            Formula::True | Formula::False => {}
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|g| g.walk_literals(pol, bound, f)),
            Formula::Not(g) => g.walk_literals(pol.flip(), bound, f),
            Formula::Implies(a, b) => {
                a.walk_literals(pol.flip(), bound, f);
                b.walk_literals(pol, bound, f);
            }
            Formula::Equiv(a, b) => {
                for g in [a, b] {
                    g.walk_literals(pol, bound, f);
                    g.walk_literals(pol.flip(), bound, f);
                }
            }
            Formula::Quant(_, v, g) => {
                bound.push(*v);
                g.walk_literals(pol, bound, f);
                bound.pop();
            }
        }
    }

    /// `(V⁺(F), V⁻(F))`: free variables with an occurrence in an atom of
    /// positive resp. negative polarity.
    pub fn polarity_vars(&self) -> (BTreeSet<Symbol>, BTreeSet<Symbol>) {
        let mut pos = BTreeSet::new();
        let mut neg = BTreeSet::new();
        self.for_each_literal(&mut |l, p, bound| {
            let target = if p == Polarity::Pos { &mut pos } else { &mut neg };
            for v in l.vars() {
                if !bound.contains(&v) {
                    target.insert(v);
                }
            }
        });
        (pos, neg)
    }

    pub fn vocabulary(&self) -> Vocabulary {
        let mut voc = Vocabulary::default();
        self.for_each_literal(&mut |l, p, _| {
            voc.predicates.insert((l.pred, p));
            l.args.iter().for_each(|a| a.collect_functions(&mut voc.functions));
        });
        voc
    }

    pub fn functions(&self) -> BTreeSet<Symbol> {
        self.vocabulary().functions
    }

    /// All variable names, bound or free.
    pub fn all_var_names(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.walk_all_vars(&mut out);
        out
    }

    fn walk_all_vars(&self, out: &mut BTreeSet<Symbol>) {
        match self {
            Formula::Lit(l) => l.args.iter().for_each(|a| a.collect_vars(out)),
            Formula::True | Formula::False => {}
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|g| g.walk_all_vars(out)),
            Formula::Not(g) => g.walk_all_vars(out),
            Formula::Implies(a, b) | Formula::Equiv(a, b) => {
                a.walk_all_vars(out);
                b.walk_all_vars(out);
            }
            Formula::Quant(_, v, g) => {
                out.insert(*v);
                g.walk_all_vars(out);
            }
        }
    }

    /// Every symbol name in the formula; used to reserve fresh names.
    pub fn all_names(&self) -> BTreeSet<Symbol> {
        let mut out = self.all_var_names();
        let voc = self.vocabulary();
        out.extend(voc.predicate_symbols());
        out.extend(voc.functions);
        out
    }

    /// Apply `f` to every literal; binders are left untouched.
    pub fn map_literals(&self, f: &dyn Fn(&Literal) -> Literal) -> Formula {
        match self {
            Formula::Lit(l) => Formula::Lit(f(l)),
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::And(fs) => Formula::And(fs.iter().map(|g| g.map_literals(f)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|g| g.map_literals(f)).collect()),
            Formula::Not(g) => Formula::Not(Box::new(g.map_literals(f))),
            Formula::Implies(a, b) => {
                Formula::Implies(Box::new(a.map_literals(f)), Box::new(b.map_literals(f)))
            }
            Formula::Equiv(a, b) => Formula::Equiv(Box::new(a.map_literals(f)), Box::new(b.map_literals(f))),
            Formula::Quant(q, v, g) => Formula::Quant(*q, *v, Box::new(g.map_literals(f))),
        }
    }

    /// Replace free occurrences of variables. Terms substituted in must not
    /// contain variables bound at the replacement site.
    pub fn substitute_free(&self, map: &BTreeMap<Symbol, Term>) -> Formula {
        fn go(f: &Formula, map: &BTreeMap<Symbol, Term>, bound: &mut Vec<Symbol>) -> Formula {
            match f {
                Formula::Lit(l) => {
                    let sub = |t: &Term| -> Option<Term> {
                        match t {
                            Term::Var(v) if !bound.contains(v) => map.get(v).cloned(),
                            _ => None,
                        }
                    };
                    Formula::Lit(l.map_terms(&|t| t.replace(&sub)))
                }
                Formula::True => Formula::True,
                Formula::False => Formula::False,
                Formula::And(fs) => Formula::And(fs.iter().map(|g| go(g, map, bound)).collect()),
                Formula::Or(fs) => Formula::Or(fs.iter().map(|g| go(g, map, bound)).collect()),
                Formula::Not(g) => Formula::Not(Box::new(go(g, map, bound))),
                Formula::Implies(a, b) => {
                    let a = go(a, map, bound);
                    Formula::Implies(Box::new(a), Box::new(go(b, map, bound)))
                }
                Formula::Equiv(a, b) => {
                    let a = go(a, map, bound);
                    Formula::Equiv(Box::new(a), Box::new(go(b, map, bound)))
                }
                Formula::Quant(q, v, g) => {
                    bound.push(*v);
                    let g = go(g, map, bound);
                    bound.pop();
                    Formula::Quant(*q, *v, Box::new(g))
                }
            }
        }
        go(self, map, &mut Vec::new())
    }

    /// Replace occurrences of terms selected by `map` (outermost first).
    pub fn replace_terms(&self, map: &dyn Fn(&Term) -> Option<Term>) -> Formula {
        self.map_literals(&|l| l.map_terms(&|t| t.replace(map)))
    }

    /// Quantifier-free and built from literals, truth constants, `∧`, `∨`.
    pub fn is_nnf(&self) -> bool {
        match self {
            Formula::Lit(_) | Formula::True | Formula::False => true,
            Formula::And(fs) | Formula::Or(fs) => fs.iter().all(Formula::is_nnf),
            _ => false,
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Lit(_) | Formula::True | Formula::False => true,
            Formula::And(fs) | Formula::Or(fs) => fs.iter().all(Formula::is_quantifier_free),
            Formula::Not(g) => g.is_quantifier_free(),
            Formula::Implies(a, b) | Formula::Equiv(a, b) => a.is_quantifier_free() && b.is_quantifier_free(),
            Formula::Quant(..) => false,
        }
    }

    /// Split off the leading quantifier prefix.
    pub fn split_prefix(&self) -> (Vec<(Quantifier, Symbol)>, &Formula) {
        let mut prefix = Vec::new();
        let mut cur = self;
        while let Formula::Quant(q, v, g) = cur {
            prefix.push((*q, *v));
            cur = g;
        }
        (prefix, cur)
    }

    pub fn is_ground(&self) -> bool {
        let mut ground = true;
        self.for_each_literal(&mut |l, _, _| ground &= l.is_ground());
        ground && self.all_var_names().is_empty()
    }

    /// Literals of the formula in left-to-right order.
    pub fn literals(&self) -> Vec<Literal> {
        let mut out = Vec::new();
        self.for_each_literal(&mut |l, _, _| out.push(l.clone()));
        out
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Lit(_) | Formula::True | Formula::False => 1,
            Formula::And(fs) | Formula::Or(fs) => 1 + fs.iter().map(Formula::size).sum::<usize>(),
            Formula::Not(g) | Formula::Quant(_, _, g) => 1 + g.size(),
            Formula::Implies(a, b) | Formula::Equiv(a, b) => 1 + a.size() + b.size(),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum SignatureError {
    #[error("symbol `{symbol}` used with arity {first} and arity {second}")]
    ArityConflict { symbol: String, first: usize, second: usize },
    #[error("symbol `{0}` used both as function and as predicate")]
    NamespaceClash(String),
}

/// Function and predicate arities of one problem.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub functions: BTreeMap<Symbol, usize>,
    pub predicates: BTreeMap<Symbol, usize>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_function(&mut self, f: Symbol, arity: usize) -> Result<(), SignatureError> {
        if self.predicates.contains_key(&f) {
            return Err(SignatureError::NamespaceClash(f.to_string()));
        }
        match self.functions.get(&f) {
            Some(&a) if a != arity => Err(SignatureError::ArityConflict {
                symbol: f.to_string(),
                first: a,
                second: arity,
            }),
            _ => {
                self.functions.insert(f, arity);
                Ok(())
            }
        }
    }

    pub fn add_predicate(&mut self, p: Symbol, arity: usize) -> Result<(), SignatureError> {
        if self.functions.contains_key(&p) {
            return Err(SignatureError::NamespaceClash(p.to_string()));
        }
        match self.predicates.get(&p) {
            Some(&a) if a != arity => Err(SignatureError::ArityConflict {
                symbol: p.to_string(),
                first: a,
                second: arity,
            }),
            _ => {
                self.predicates.insert(p, arity);
                Ok(())
            }
        }
    }

    pub fn add_term(&mut self, t: &Term) -> Result<(), SignatureError> {
        if let Term::App(f, args) = t {
            self.add_function(*f, args.len())?;
            for a in args {
                self.add_term(a)?;
            }
        }
        Ok(())
    }

    pub fn add_literal(&mut self, l: &Literal) -> Result<(), SignatureError> {
        self.add_predicate(l.pred, l.args.len())?;
        l.args.iter().try_for_each(|a| self.add_term(a))
    }

    pub fn add_formula(&mut self, f: &Formula) -> Result<(), SignatureError> {
        let mut res = Ok(());
        f.for_each_literal(&mut |l, _, _| {
            if res.is_ok() {
                res = self.add_literal(l);
            }
        });
        res
    }

    pub fn add_clause(&mut self, c: &Clause) -> Result<(), SignatureError> {
        c.literals.iter().try_for_each(|l| self.add_literal(l))
    }

    pub fn collect<'a, I>(formulas: I) -> Result<Signature, SignatureError>
    where
        I: IntoIterator<Item = &'a Formula>,
    {
        let mut sig = Signature::new();
        for f in formulas {
            sig.add_formula(f)?;
        }
        Ok(sig)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Term {
        Term::var("x")
    }
    fn y() -> Term {
        Term::var("y")
    }
    fn set(names: &[&str]) -> BTreeSet<Symbol> {
        names.iter().map(|n| Symbol::new(n)).collect()
    }

    #[test]
    fn free_vars_examples() {
        let f = Formula::and(vec![
            Formula::atom("p", vec![x()]),
            Formula::forall("y", Formula::atom("q", vec![y()])),
        ]);
        assert_eq!(f.free_vars(), set(&["x"]));
        assert!(Formula::atom("p", vec![Term::constant("a")]).free_vars().is_empty());
        // ∀x p(x,y) ∨ q(x): the q(x) occurrence is outside the binder
        let g = Formula::or(vec![
            Formula::forall("x", Formula::atom("p", vec![x(), y()])),
            Formula::atom("q", vec![x()]),
        ]);
        assert_eq!(g.free_vars(), set(&["x", "y"]));
    }

    #[test]
    fn polarity_vars_examples() {
        let f = Formula::or(vec![Formula::neg_atom("p", vec![x()]), Formula::atom("q", vec![x()])]);
        assert_eq!(f.polarity_vars(), (set(&["x"]), set(&["x"])));
        assert_eq!(Formula::atom("p", vec![x()]).polarity_vars(), (set(&["x"]), set(&[])));
        let g = Formula::implies(Formula::atom("p", vec![x()]), Formula::atom("q", vec![y()]));
        assert_eq!(g.polarity_vars(), (set(&["y"]), set(&["x"])));
    }

    #[test]
    fn vocabulary_examples() {
        let f = Formula::and(vec![
            Formula::atom("p", vec![Term::constant("a")]),
            Formula::neg_atom("q", vec![Term::app("f", vec![x()])]),
        ]);
        let v = f.vocabulary();
        assert_eq!(v.functions, set(&["a", "f"]));
        let preds: BTreeSet<_> = [(Symbol::new("p"), Polarity::Pos), (Symbol::new("q"), Polarity::Neg)].into();
        assert_eq!(v.predicates, preds);

        let nn = Formula::not(Formula::not(Formula::atom("p", vec![])));
        assert_eq!(nn.vocabulary().predicates, [(Symbol::new("p"), Polarity::Pos)].into());

        let pp = Formula::implies(Formula::atom("p", vec![]), Formula::atom("p", vec![]));
        assert_eq!(
            pp.vocabulary().predicates,
            [(Symbol::new("p"), Polarity::Pos), (Symbol::new("p"), Polarity::Neg)].into()
        );
    }

    #[test]
    fn complement_is_involution() {
        let l = Literal::neg("p", vec![x()]);
        assert_eq!(l.complement().complement(), l);
        assert!(l.is_complement_of(&l.complement()));
    }

    #[test]
    fn signature_rejects_arity_conflicts() {
        let f = Formula::and(vec![
            Formula::atom("p", vec![x()]),
            Formula::atom("p", vec![x(), x()]),
        ]);
        assert!(matches!(
            Signature::collect([&f]),
            Err(SignatureError::ArityConflict { .. })
        ));
        let g = Formula::atom("p", vec![Term::app("p", vec![])]);
        assert!(matches!(Signature::collect([&g]), Err(SignatureError::NamespaceClash(_))));
    }
}
