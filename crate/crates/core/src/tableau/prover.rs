//! Connection tableau prover with rigid variables, regularity and iterative
//! deepening on the path length.
//!
//! Terms are structure-shared: a clause copy is the clause together with a
//! variable offset, and bindings point to (term, offset) pairs. Backtracking
//! undoes bindings from a trail. Goals are solved in continuation-passing
//! style so that backtracking can revisit earlier choices.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use thiserror::Error;

use super::{Node, Tableau};
use crate::logic::{Clause, Literal, Term};
use crate::symbol::Symbol;

pub const DEFAULT_MAX_DEPTH: usize = 24;
pub const DEFAULT_MAX_INFERENCES: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProverLimits {
    /// Maximal path length tried by iterative deepening.
    pub max_depth: usize,
    pub max_inferences: u64,
    pub timeout: Option<Duration>,
}

impl Default for ProverLimits {
    fn default() -> Self {
        ProverLimits { max_depth: DEFAULT_MAX_DEPTH, max_inferences: DEFAULT_MAX_INFERENCES, timeout: None }
    }
}

impl ProverLimits {
    pub fn scaled(&self, factor: u32) -> ProverLimits {
        ProverLimits {
            max_depth: self.max_depth,
            max_inferences: self.max_inferences.saturating_mul(u64::from(factor)),
            timeout: self.timeout.map(|t| t * factor),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProveError {
    #[error("no clauses to refute")]
    EmptyInput,
    /// The search space was exhausted: the clause set is satisfiable.
    #[error("no refutation exists")]
    NoRefutation,
    #[error("depth limit {0} reached without a proof")]
    DepthLimit(usize),
    #[error("inference limit {0} reached without a proof")]
    InferenceLimit(u64),
    #[error("timeout reached without a proof")]
    Timeout,
}

impl ProveError {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, ProveError::DepthLimit(_) | ProveError::InferenceLimit(_) | ProveError::Timeout)
    }
}

#[derive(Debug)]
enum PTerm {
    Var(usize),
    App(Symbol, Vec<PTerm>),
}

#[derive(Debug)]
struct PLit {
    positive: bool,
    pred: Symbol,
    args: Vec<PTerm>,
}

#[derive(Debug)]
struct PClause {
    lits: Vec<PLit>,
    nvars: usize,
}

fn compile(c: &Clause) -> PClause {
    fn term(t: &Term, vars: &mut BTreeMap<Symbol, usize>) -> PTerm {
        match t {
            Term::Var(v) => {
                let n = vars.len();
                PTerm::Var(*vars.entry(*v).or_insert(n))
            }
            Term::App(f, args) => PTerm::App(*f, args.iter().map(|a| term(a, vars)).collect()),
        }
    }
    let mut vars = BTreeMap::new();
    let lits = c
        .literals
        .iter()
        .map(|l| PLit { positive: l.positive, pred: l.pred, args: l.args.iter().map(|a| term(a, &mut vars)).collect() })
        .collect();
    PClause { lits, nvars: vars.len() }
}

#[derive(Clone, Copy, Debug)]
enum Step {
    Reduction,
    Extension { clause: usize, lit: usize, offset: usize },
}

#[derive(Clone, Copy, Debug)]
enum Abort {
    Inferences,
    Timeout,
}

struct Search<'a> {
    clauses: &'a [PClause],
    bindings: Vec<Option<(&'a PTerm, usize)>>,
    trail: Vec<usize>,
    next_offset: usize,
    path: Vec<(usize, usize, usize)>,
    steps: Vec<Step>,
    inferences: u64,
    max_inferences: u64,
    deadline: Option<Instant>,
    depth_cut: bool,
    abort: Option<Abort>,
}

impl<'a> Search<'a> {
    fn alloc(&mut self, clause: usize) -> usize {
        let off = self.next_offset;
        self.next_offset += self.clauses[clause].nvars;
        if self.bindings.len() < self.next_offset {
            self.bindings.resize(self.next_offset, None);
        }
        off
    }

    fn tick(&mut self) -> bool {
        self.inferences += 1;
        if self.inferences > self.max_inferences {
            self.abort = Some(Abort::Inferences);
        } else if self.inferences.is_multiple_of(1024) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.abort = Some(Abort::Timeout);
                }
            }
        }
        self.abort.is_none()
    }

    fn deref(&self, mut t: &'a PTerm, mut o: usize) -> (&'a PTerm, usize) {
        while let PTerm::Var(i) = t {
            match self.bindings[o + i] {
                Some((bt, bo)) => {
                    t = bt;
                    o = bo;
                }
                None => break,
            }
        }
        (t, o)
    }

    fn occurs(&self, var: usize, t: &'a PTerm, o: usize) -> bool {
        let (t, o) = self.deref(t, o);
        match t {
            PTerm::Var(i) => o + i == var,
            PTerm::App(_, args) => args.iter().any(|a| self.occurs(var, a, o)),
        }
    }

    fn unify(&mut self, a: &'a PTerm, ao: usize, b: &'a PTerm, bo: usize) -> bool {
        let (a, ao) = self.deref(a, ao);
        let (b, bo) = self.deref(b, bo);
        match (a, b) {
            (PTerm::Var(i), PTerm::Var(j)) if ao + i == bo + j => true,
            (PTerm::Var(i), _) => {
                if self.occurs(ao + i, b, bo) {
                    return false;
                }
                self.bindings[ao + i] = Some((b, bo));
                self.trail.push(ao + i);
                true
            }
            (_, PTerm::Var(j)) => {
                if self.occurs(bo + j, a, ao) {
                    return false;
                }
                self.bindings[bo + j] = Some((a, ao));
                self.trail.push(bo + j);
                true
            }
            (PTerm::App(f, fa), PTerm::App(g, ga)) => {
                f == g && fa.len() == ga.len() && fa.iter().zip(ga).all(|(x, y)| self.unify(x, ao, y, bo))
            }
        }
    }

    fn unify_lits(&mut self, a: &'a PLit, ao: usize, b: &'a PLit, bo: usize) -> bool {
        a.args.iter().zip(&b.args).all(|(x, y)| self.unify(x, ao, y, bo))
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            self.bindings[v] = None;
        }
    }

    fn term_eq(&self, a: &'a PTerm, ao: usize, b: &'a PTerm, bo: usize) -> bool {
        let (a, ao) = self.deref(a, ao);
        let (b, bo) = self.deref(b, bo);
        match (a, b) {
            (PTerm::Var(i), PTerm::Var(j)) => ao + i == bo + j,
            (PTerm::App(f, fa), PTerm::App(g, ga)) => {
                f == g && fa.len() == ga.len() && fa.iter().zip(ga).all(|(x, y)| self.term_eq(x, ao, y, bo))
            }
            _ => false,
        }
    }

    fn lit(&self, c: usize, l: usize) -> &'a PLit {
        &self.clauses[c].lits[l]
    }

    fn connectable(a: &PLit, b: &PLit) -> bool {
        a.positive != b.positive && a.pred == b.pred && a.args.len() == b.args.len()
    }

    /// Prove literals `i..` of clause copy `(c, o)`, skipping `skip`, then
    /// run `k`.
    fn solve_goals(
        &mut self,
        c: usize,
        o: usize,
        skip: Option<usize>,
        i: usize,
        limit: usize,
        k: &mut dyn FnMut(&mut Self) -> bool,
    ) -> bool {
        if i == self.clauses[c].lits.len() {
            return k(self);
        }
        if skip == Some(i) {
            return self.solve_goals(c, o, skip, i + 1, limit, k);
        }
        self.solve_lit(c, i, o, limit, &mut |s: &mut Self| s.solve_goals(c, o, skip, i + 1, limit, k))
    }

    fn solve_lit(&mut self, c: usize, li: usize, o: usize, limit: usize, k: &mut dyn FnMut(&mut Self) -> bool) -> bool {
        if self.abort.is_some() {
            return false;
        }
        let lit = self.lit(c, li);
        // Regularity: the goal must differ from every literal on the path.
        for idx in 0..self.path.len() {
            let (pc, pl, po) = self.path[idx];
            let p = self.lit(pc, pl);
            if p.positive == lit.positive
                && p.pred == lit.pred
                && p.args.len() == lit.args.len()
                && p.args.iter().zip(&lit.args).all(|(x, y)| self.term_eq(x, po, y, o))
            {
                return false;
            }
        }
        // Reduction, nearest ancestor first.
        for idx in (0..self.path.len()).rev() {
            let (pc, pl, po) = self.path[idx];
            let p = self.lit(pc, pl);
            if !Self::connectable(lit, p) {
                continue;
            }
            if !self.tick() {
                return false;
            }
            let mark = self.trail.len();
            if self.unify_lits(lit, o, p, po) {
                self.steps.push(Step::Reduction);
                if k(self) {
                    return true;
                }
                self.steps.pop();
                let bound_nothing = self.trail.len() == mark;
                self.undo(mark);
                if bound_nothing {
                    return false;
                }
            } else {
                self.undo(mark);
            }
        }
        // Extension.
        if self.path.len() >= limit {
            if self.clauses.iter().any(|d| d.lits.iter().any(|m| Self::connectable(lit, m))) {
                self.depth_cut = true;
            }
            return false;
        }
        for dc in 0..self.clauses.len() {
            for dl in 0..self.clauses[dc].lits.len() {
                let m = self.lit(dc, dl);
                if !Self::connectable(lit, m) {
                    continue;
                }
                if !self.tick() {
                    return false;
                }
                let saved_offset = self.next_offset;
                let off = self.alloc(dc);
                let mark = self.trail.len();
                if self.unify_lits(lit, o, m, off) {
                    self.steps.push(Step::Extension { clause: dc, lit: dl, offset: off });
                    self.path.push((c, li, o));
                    let ok = self.solve_goals(dc, off, Some(dl), 0, limit, &mut |s: &mut Self| {
                        let top = s.path.pop().unwrap();
                        if k(s) {
                            return true;
                        }
                        s.path.push(top);
                        false
                    });
                    if ok {
                        return true;
                    }
                    self.path.pop();
                    self.steps.pop();
                    let trivial = self.trail.len() == mark && self.clauses[dc].lits.len() == 1;
                    self.undo(mark);
                    self.next_offset = saved_offset;
                    if trivial {
                        return false;
                    }
                } else {
                    self.undo(mark);
                    self.next_offset = saved_offset;
                }
            }
        }
        false
    }

    fn resolve(&self, t: &'a PTerm, o: usize) -> Term {
        let (t, o) = self.deref(t, o);
        match t {
            PTerm::Var(i) => Term::Var(Symbol::new(&format!("X_{}", o + i))),
            PTerm::App(f, args) => Term::App(*f, args.iter().map(|a| self.resolve(a, o)).collect()),
        }
    }

    fn literal(&self, c: usize, l: usize, o: usize) -> Literal {
        let p = self.lit(c, l);
        Literal { positive: p.positive, pred: p.pred, args: p.args.iter().map(|a| self.resolve(a, o)).collect() }
    }

    fn build(&self, start: usize, offset: usize) -> Tableau {
        let mut cursor = 0;
        let children = (0..self.clauses[start].lits.len()).map(|i| self.build_goal(start, i, offset, &mut cursor)).collect();
        Tableau::new(children)
    }

    fn build_goal(&self, c: usize, l: usize, o: usize, cursor: &mut usize) -> Node {
        let lit = self.literal(c, l, o);
        let step = self.steps[*cursor];
        *cursor += 1;
        match step {
            Step::Reduction => Node::leaf(lit),
            Step::Extension { clause, lit: dl, offset } => {
                let children = (0..self.clauses[clause].lits.len())
                    .map(|j| {
                        if j == dl {
                            Node::leaf(self.literal(clause, j, offset))
                        } else {
                            self.build_goal(clause, j, offset, cursor)
                        }
                    })
                    .collect();
                Node::new(lit, children)
            }
        }
    }
}

fn search(clauses: &[Clause], limits: &ProverLimits) -> Result<Tableau, ProveError> {
    if clauses.is_empty() {
        return Err(ProveError::EmptyInput);
    }
    if clauses.iter().any(Clause::is_empty) {
        return Ok(Tableau::new(Vec::new()));
    }
    let compiled: Vec<PClause> = clauses.iter().map(compile).collect();
    let mut s = Search {
        clauses: &compiled,
        bindings: Vec::new(),
        trail: Vec::new(),
        next_offset: 0,
        path: Vec::new(),
        steps: Vec::new(),
        inferences: 0,
        max_inferences: limits.max_inferences,
        deadline: limits.timeout.map(|t| Instant::now() + t),
        depth_cut: false,
        abort: None,
    };
    for limit in 1..=limits.max_depth {
        s.depth_cut = false;
        for start in 0..compiled.len() {
            s.next_offset = 0;
            s.steps.clear();
            let off = s.alloc(start);
            if s.solve_goals(start, off, None, 0, limit, &mut |_| true) {
                let mut t = s.build(start, off);
                t.simplify();
                return Ok(t);
            }
            match s.abort {
                Some(Abort::Inferences) => return Err(ProveError::InferenceLimit(limits.max_inferences)),
                Some(Abort::Timeout) => return Err(ProveError::Timeout),
                None => {}
            }
        }
        if !s.depth_cut {
            return Err(ProveError::NoRefutation);
        }
    }
    Err(ProveError::DepthLimit(limits.max_depth))
}

/// Search for a closed, leaf-closed, regular clausal tableau for `clauses`.
/// Deterministic for identical inputs and limits. Unbound rigid variables
/// remain as variables `X_n`.
pub fn prove(clauses: &[Clause], limits: &ProverLimits) -> Result<Tableau, ProveError> {
    // Continuations nest deeply on long proofs; run on a roomy stack.
    std::thread::scope(|scope| {
        std::thread::Builder::new()
            .stack_size(512 << 20)
            .spawn_scoped(scope, || search(clauses, limits))
            .expect("spawn prover thread")
            .join()
            .expect("prover thread panicked")
    })
}
