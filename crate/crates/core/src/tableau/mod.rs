//! Clausal tableaux: structure, closedness, simplification, grounding,
//! side labels and the hyper predicate.

mod doc;
mod prover;

pub use doc::{parse_tableau, print_tableau};
pub use prover::{prove, ProveError, ProverLimits, DEFAULT_MAX_DEPTH, DEFAULT_MAX_INFERENCES};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::logic::{Clause, Literal, Substitution, Term};
use crate::symbol::{FreshNames, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Side {
    F,
    G,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::F => "F",
            Side::G => "G",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    /// `None` only at the root.
    pub literal: Option<Literal>,
    pub side: Option<Side>,
    pub children: Vec<Node>,
    /// Depth of the closing ancestor (root has depth 0).
    pub target: Option<usize>,
}

impl Node {
    pub fn new(literal: Literal, children: Vec<Node>) -> Node {
        Node { literal: Some(literal), side: None, children, target: None }
    }

    pub fn leaf(literal: Literal) -> Node {
        Node::new(literal, Vec::new())
    }

    pub fn with_side(mut self, side: Side) -> Node {
        self.side = Some(side);
        self
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn lit(&self) -> &Literal {
        self.literal.as_ref().expect("root node has no literal")
    }

    /// The clause formed by the children's literals.
    pub fn child_clause(&self) -> Clause {
        Clause::new(self.children.iter().map(|c| c.lit().clone()).collect())
    }

    fn count(&self, inner_only: bool) -> usize {
        let own = usize::from(!inner_only || !self.is_leaf());
        own + self.children.iter().map(|c| c.count(inner_only)).sum::<usize>()
    }

    fn for_each<'a>(&'a self, depth: usize, f: &mut dyn FnMut(&'a Node, usize)) {
        f(self, depth);
        for c in &self.children {
            c.for_each(depth + 1, f);
        }
    }

    fn for_each_mut(&mut self, f: &mut dyn FnMut(&mut Node)) {
        f(self);
        for c in &mut self.children {
            c.for_each_mut(f);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    pub root: Node,
}

/// Literal of the nearest ancestor (by depth) complementary to `l`.
fn nearest_complement(path: &[&Literal], l: &Literal) -> Option<usize> {
    path.iter().rposition(|a| a.is_complement_of(l)).map(|i| i + 1)
}

impl Tableau {
    pub fn new(children: Vec<Node>) -> Tableau {
        Tableau { root: Node { literal: None, side: None, children, target: None } }
    }

    /// Number of inner nodes, root included.
    pub fn size(&self) -> usize {
        self.root.count(true)
    }

    pub fn node_count(&self) -> usize {
        self.root.count(false)
    }

    /// Visit nodes in pre-order with their depth.
    pub fn for_each_node<'a>(&'a self, f: &mut dyn FnMut(&'a Node, usize)) {
        self.root.for_each(0, f);
    }

    pub fn node_at(&self, path: &[usize]) -> &Node {
        path.iter().fold(&self.root, |n, &i| &n.children[i])
    }

    pub fn node_at_mut(&mut self, path: &[usize]) -> &mut Node {
        path.iter().fold(&mut self.root, |n, &i| &mut n.children[i])
    }

    /// Set every node's target to its nearest complementary ancestor.
    pub fn mark_targets(&mut self) {
        fn go(n: &mut Node, path: &mut Vec<Literal>) {
            if let Some(l) = &n.literal {
                let refs: Vec<&Literal> = path.iter().collect();
                n.target = nearest_complement(&refs, l);
                path.push(l.clone());
            }
            for c in &mut n.children {
                go(c, path);
            }
            if n.literal.is_some() {
                path.pop();
            }
        }
        go(&mut self.root, &mut Vec::new());
    }

    /// Every branch contains a pair of complementary literals. A root
    /// without children stands for the empty clause and counts as closed.
    pub fn is_closed(&self) -> bool {
        fn go<'a>(n: &'a Node, path: &mut Vec<&'a Literal>) -> bool {
            if let Some(l) = &n.literal {
                if nearest_complement(path, l).is_some() {
                    return true;
                }
                if n.is_leaf() {
                    return false;
                }
                path.push(l);
            }
            let ok = n.children.iter().all(|c| go(c, path));
            if n.literal.is_some() {
                path.pop();
            }
            ok
        }
        go(&self.root, &mut Vec::new())
    }

    /// Every closing node is a leaf and every leaf is closing.
    pub fn is_leaf_closing(&self) -> bool {
        fn go<'a>(n: &'a Node, path: &mut Vec<&'a Literal>) -> bool {
            if let Some(l) = &n.literal {
                let closing = nearest_complement(path, l).is_some();
                if closing != n.is_leaf() {
                    return false;
                }
                path.push(l);
            }
            let ok = n.children.iter().all(|c| go(c, path));
            if n.literal.is_some() {
                path.pop();
            }
            ok
        }
        go(&self.root, &mut Vec::new())
    }

    pub fn is_leaf_closed(&self) -> bool {
        self.is_closed() && self.is_leaf_closing()
    }

    /// No node has an ancestor with the same literal.
    pub fn is_regular(&self) -> bool {
        fn go<'a>(n: &'a Node, path: &mut Vec<&'a Literal>) -> bool {
            if let Some(l) = &n.literal {
                if path.contains(&l) {
                    return false;
                }
                path.push(l);
            }
            let ok = n.children.iter().all(|c| go(c, path));
            if n.literal.is_some() {
                path.pop();
            }
            ok
        }
        go(&self.root, &mut Vec::new())
    }

    /// Nodes labeled with a negative literal are exactly the leaves.
    pub fn is_hyper(&self) -> bool {
        let mut ok = true;
        self.for_each_node(&mut |n, _| {
            if let Some(l) = &n.literal {
                ok &= l.positive != n.is_leaf();
            }
        });
        ok
    }

    pub fn is_ground(&self) -> bool {
        let mut ok = true;
        self.for_each_node(&mut |n, _| ok &= n.literal.as_ref().is_none_or(Literal::is_ground));
        ok
    }

    /// Clauses of the inner nodes in pre-order.
    pub fn clauses(&self) -> Vec<Clause> {
        let mut out = Vec::new();
        self.for_each_node(&mut |n, _| {
            if !n.is_leaf() {
                out.push(n.child_clause());
            }
        });
        out
    }

    /// Distinct clauses of the tableau, compared as literal sets.
    pub fn clause_set(&self) -> BTreeSet<Vec<Literal>> {
        self.clauses().iter().map(Clause::set_key).collect()
    }

    pub fn variables(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.for_each_node(&mut |n, _| {
            if let Some(l) = &n.literal {
                out.extend(l.vars());
            }
        });
        out
    }

    pub fn functions(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.for_each_node(&mut |n, _| {
            if let Some(l) = &n.literal {
                l.args.iter().for_each(|a| a.collect_functions(&mut out));
            }
        });
        out
    }

    pub fn apply(&mut self, s: &Substitution) {
        self.root.for_each_mut(&mut |n| {
            if let Some(l) = &mut n.literal {
                *l = l.apply(s);
            }
        });
    }

    /// Regularity and leaf-closing simplification, top-down. A closing node
    /// loses its children; a node with a child whose literal already occurs
    /// on the path (the node included) takes over that child's children.
    /// Targets are recomputed. Returns the number of edge replacements.
    pub fn simplify(&mut self) -> usize {
        fn go(n: &mut Node, path: &mut Vec<Literal>, ops: &mut usize) {
            if let Some(l) = &n.literal {
                if path.iter().any(|a| a.is_complement_of(l)) {
                    if !n.children.is_empty() {
                        n.children.clear();
                        *ops += 1;
                    }
                    return;
                }
                path.push(l.clone());
            }
            while let Some(i) = n
                .children
                .iter()
                .position(|c| c.literal.as_ref().is_some_and(|cl| path.contains(cl)))
            {
                let grand = std::mem::take(&mut n.children[i].children);
                n.children = grand;
                *ops += 1;
            }
            for c in &mut n.children {
                go(c, path, ops);
            }
            if n.literal.is_some() {
                path.pop();
            }
        }
        let mut ops = 0;
        go(&mut self.root, &mut Vec::new(), &mut ops);
        self.mark_targets();
        ops
    }

    pub fn simplified(&self) -> Tableau {
        let mut t = self.clone();
        t.simplify();
        t
    }

    /// Every symbol name in the tableau; used to reserve fresh names.
    pub fn names(&self) -> BTreeSet<Symbol> {
        let mut out = self.variables();
        out.extend(self.functions());
        self.for_each_node(&mut |n, _| {
            if let Some(l) = &n.literal {
                out.insert(l.pred);
            }
        });
        out
    }
}

/// Which of the fresh constant sets grounding constants go to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GroundingPolicy {
    #[default]
    AllF,
    AllG,
    RoundRobin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grounded {
    pub tableau: Tableau,
    /// Fresh constants counted with the F side.
    pub s1: BTreeSet<Symbol>,
    /// Fresh constants counted with the G side.
    pub s2: BTreeSet<Symbol>,
}

/// Replace each remaining variable by a dedicated fresh constant `gN`.
/// `fresh` must reserve every name already in use.
pub fn ground_tableau(t: &Tableau, policy: GroundingPolicy, fresh: &mut FreshNames) -> Grounded {
    fresh.reserve_all(t.names().iter().map(|s| s.as_str()));
    let mut s = Substitution::new();
    let (mut s1, mut s2) = (BTreeSet::new(), BTreeSet::new());
    for (i, v) in t.variables().into_iter().enumerate() {
        let c = fresh.fresh("g");
        let to_f = match policy {
            GroundingPolicy::AllF => true,
            GroundingPolicy::AllG => false,
            GroundingPolicy::RoundRobin => i % 2 == 0,
        };
        if to_f { &mut s1 } else { &mut s2 }.insert(c);
        s.insert_raw(v, Term::App(c, vec![]));
    }
    let mut tableau = t.clone();
    tableau.apply(&s);
    Grounded { tableau, s1, s2 }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SideError {
    #[error("tableau clause `{0}` is an instance of neither input clause set")]
    NoSource(String),
}

/// Substitution `σ` with `set(Cσ) = set(target)`, if any.
pub fn instance_of(c: &Clause, target: &Clause) -> Option<Substitution> {
    let want = target.set_key();
    fn go(lits: &[Literal], target: &[Literal], s: Substitution, covered: &mut Vec<bool>) -> Option<Substitution> {
        let Some((first, rest)) = lits.split_first() else {
            return covered.iter().all(|&b| b).then_some(s);
        };
        for (i, t) in target.iter().enumerate() {
            let mut s2 = s.clone();
            if first.match_onto(t, &mut s2) {
                let was = covered[i];
                covered[i] = true;
                if let Some(r) = go(rest, target, s2, covered) {
                    return Some(r);
                }
                covered[i] = was;
            }
        }
        None
    }
    go(&c.literals, &want, Substitution::new(), &mut vec![false; want.len()])
}

/// Label every non-root node by the side of the input clause its clause
/// instantiates; `tie` decides for clauses that instantiate both.
pub fn assign_sides(t: &Tableau, f: &[Clause], g: &[Clause], tie: Side) -> Result<Tableau, SideError> {
    let mut out = t.clone();
    let mut cache: BTreeMap<Vec<Literal>, Side> = BTreeMap::new();
    let mut err = None;
    out.root.for_each_mut(&mut |n| {
        if n.is_leaf() || err.is_some() {
            return;
        }
        let clause = n.child_clause();
        let key = clause.set_key();
        let side = match cache.get(&key) {
            Some(s) => *s,
            None => {
                let in_f = f.iter().any(|c| instance_of(c, &clause).is_some());
                let in_g = g.iter().any(|c| instance_of(c, &clause).is_some());
                let s = match (in_f, in_g) {
                    (true, true) => tie,
                    (true, false) => Side::F,
                    (false, true) => Side::G,
                    (false, false) => {
                        err = Some(SideError::NoSource(clause.to_string()));
                        return;
                    }
                };
                cache.insert(key, s);
                s
            }
        };
        for c in &mut n.children {
            c.side = Some(side);
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_clause, parse_literal};

    fn l(s: &str) -> Literal {
        parse_literal(s).unwrap()
    }

    fn fig2() -> Tableau {
        parse_tableau(
            "tableau.\n*\n  ~r(a) [G]\n    ~q(a) [G]\n      ~p(a) [F]\n        p(a) [F] {-> 3}\n      q(a) [F] {-> 2}\n    r(a) [G] {-> 1}\n",
        )
        .unwrap()
    }

    #[test]
    fn closedness() {
        let t = Tableau::new(vec![Node::new(l("p"), vec![Node::leaf(l("~p"))])]);
        assert!(t.is_closed());
        assert!(!Tableau::new(vec![Node::leaf(l("p"))]).is_closed());
        let t = fig2();
        assert!(t.is_closed() && t.is_leaf_closed() && t.is_regular());
        let mut u = t.clone();
        u.mark_targets();
        assert_eq!(u, t);
    }

    #[test]
    fn simplify_regularity() {
        // root -> p -> [q -> [p -> [~p]], ~q]: the inner p repeats an ancestor.
        let mut t = Tableau::new(vec![Node::new(
            l("p"),
            vec![Node::new(l("q"), vec![Node::new(l("q"), vec![Node::leaf(l("~q"))])]), Node::leaf(l("~p"))],
        )]);
        let ops = t.simplify();
        assert!(ops >= 1);
        assert!(t.is_regular() && t.is_leaf_closed());
        assert_eq!(t.simplify(), 0);
    }

    #[test]
    fn simplify_closing_inner_node() {
        let mut t = Tableau::new(vec![Node::new(
            l("p"),
            vec![Node::new(l("~p"), vec![Node::leaf(l("q")), Node::leaf(l("r"))])],
        )]);
        assert_eq!(t.simplify(), 1);
        assert_eq!(t, Tableau::new(vec![Node::new(l("p"), vec![Node { target: Some(1), ..Node::leaf(l("~p")) }])]));
        let before = t.clone();
        t.simplify();
        assert_eq!(t, before);
    }

    #[test]
    fn hyper_predicate() {
        assert!(!Tableau::new(vec![Node::leaf(l("p"))]).is_hyper());
        let t = Tableau::new(vec![Node::new(
            l("p"),
            vec![Node::leaf(l("~p")), Node::new(l("q"), vec![Node::leaf(l("~q"))])],
        )]);
        assert!(t.is_hyper());
        assert!(!fig2().is_hyper());
    }

    #[test]
    fn grounding() {
        let t = Tableau::new(vec![Node::new(
            Literal::pos("p", vec![Term::var("X")]),
            vec![Node::leaf(Literal::neg("p", vec![Term::var("Y")]))],
        )]);
        let mut fresh = FreshNames::new();
        let g = ground_tableau(&t, GroundingPolicy::AllF, &mut fresh);
        assert!(g.tableau.is_ground());
        assert_eq!(g.s1.len(), 2);
        assert!(g.s2.is_empty());
        let g2 = ground_tableau(&fig2(), GroundingPolicy::AllF, &mut fresh);
        assert_eq!(g2.tableau, fig2());
        assert!(g2.s1.is_empty());
    }

    #[test]
    fn sides_of_fig2() {
        let c = |s: &str| parse_clause(s).unwrap();
        let mut t = fig2();
        t.for_each_node(&mut |_, _| {});
        t.root.for_each_mut(&mut |n| n.side = None);
        let f = [c("p(X)"), c("~p(X) | q(X)")];
        let g = [c("~q(X) | r(X)"), c("~r(a)")];
        let out = assign_sides(&t, &f, &g, Side::F).unwrap();
        assert_eq!(out, fig2());
        assert!(assign_sides(&t, &f, &[], Side::F).is_err());
        let both = assign_sides(&t, &[f.to_vec(), g.to_vec()].concat(), &g, Side::F).unwrap();
        assert!(both.root.children.iter().all(|n| n.side == Some(Side::F)));
    }

    #[test]
    fn instance_matching_is_set_based() {
        let c = parse_clause("p(X) | p(Y)").unwrap();
        assert!(instance_of(&c, &parse_clause("p(a)").unwrap()).is_some());
        assert!(instance_of(&c, &parse_clause("p(a) | p(b)").unwrap()).is_some());
        assert!(instance_of(&parse_clause("p(X)").unwrap(), &parse_clause("p(a) | p(b)").unwrap()).is_none());
    }
}
