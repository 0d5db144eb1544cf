//! Binary resolution proofs: documents, replay validation, grounding and
//! translation into closed clausal tableaux in cut normal form.

mod doc;
pub mod saturate;

pub use doc::{parse_proof, print_proof, HEADER};

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::logic::{unify_args, Clause, Literal, Substitution, Term};
use crate::symbol::{FreshNames, Symbol};
use crate::syntax::ParseError;
use crate::tableau::{instance_of, Node, Tableau};

pub const DEFAULT_MAX_TREE_NODES: usize = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    Input,
    /// Resolution of a left parent containing `atom` with a right parent
    /// containing its negation.
    Resolve { left: String, right: String, atom: Literal },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub id: String,
    pub rule: Rule,
    pub clause: Clause,
    /// Unifier bindings as recorded by the producer; informational.
    pub bindings: Vec<(Symbol, Term)>,
    pub line: usize,
}

/// A proof document: steps in order, the last one is the conclusion.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ProofDoc {
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inference {
    Input,
    Resolve { atom: Literal, left: Box<Deduction>, right: Box<Deduction> },
}

/// Tree form of a proof; shared steps are duplicated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deduction {
    pub id: String,
    pub clause: Clause,
    pub inference: Inference,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProofError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("line {line}: step `{id}` refers to unknown step `{missing}`")]
    Dangling { line: usize, id: String, missing: String },
    #[error("line {line}: step id `{id}` is used twice")]
    DuplicateId { line: usize, id: String },
    #[error("line {line}: unsupported rule `{rule}`{hint}")]
    UnsupportedRule { line: usize, rule: String, hint: String },
    #[error("proof has no steps")]
    Empty,
    #[error("proof tree exceeds {limit} nodes")]
    SizeLimit { limit: usize },
    #[error("step `{id}`: {reason}")]
    Invalid { id: String, reason: String },
    #[error("conclusion `{0}` is not the empty clause")]
    NotRefutation(String),
}

impl ProofError {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, ProofError::SizeLimit { .. })
    }
}

impl ProofDoc {
    pub fn input_clauses(&self) -> Vec<Clause> {
        self.steps.iter().filter(|s| s.rule == Rule::Input).map(|s| s.clause.clone()).collect()
    }

    /// Number of steps, inputs included.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Expand the step DAG below the last step into a tree, refusing trees
    /// of more than `limit` nodes.
    pub fn to_tree(&self, limit: usize) -> Result<Deduction, ProofError> {
        if self.steps.is_empty() {
            return Err(ProofError::Empty);
        }
        let mut index: HashMap<&str, usize> = HashMap::new();
        let mut sizes: Vec<u128> = Vec::with_capacity(self.steps.len());
        for (i, s) in self.steps.iter().enumerate() {
            if index.insert(&s.id, i).is_some() {
                return Err(ProofError::DuplicateId { line: s.line, id: s.id.clone() });
            }
            let size = match &s.rule {
                Rule::Input => 1,
                Rule::Resolve { left, right, .. } => {
                    let mut total = 1u128;
                    for p in [left, right] {
                        // Parents must come earlier, which also rules out cycles.
                        let j = index.get(p.as_str()).filter(|&&j| j < i).ok_or_else(|| ProofError::Dangling {
                            line: s.line,
                            id: s.id.clone(),
                            missing: p.clone(),
                        })?;
                        total = total.saturating_add(sizes[*j]);
                    }
                    total
                }
            };
            sizes.push(size);
        }
        if *sizes.last().unwrap() > limit as u128 {
            return Err(ProofError::SizeLimit { limit });
        }
        fn build(doc: &ProofDoc, index: &HashMap<&str, usize>, i: usize) -> Deduction {
            let s = &doc.steps[i];
            let inference = match &s.rule {
                Rule::Input => Inference::Input,
                Rule::Resolve { left, right, atom } => Inference::Resolve {
                    atom: atom.clone(),
                    left: Box::new(build(doc, index, index[left.as_str()])),
                    right: Box::new(build(doc, index, index[right.as_str()])),
                },
            };
            Deduction { id: s.id.clone(), clause: s.clause.clone(), inference }
        }
        Ok(build(self, &index, self.steps.len() - 1))
    }

    /// Replay every resolution step of the document.
    /// Validate, expand, ground and translate to cut normal form.
    pub fn import(&self, max_tree_nodes: usize) -> Result<Tableau, ProofError> {
        self.validate()?;
        self.to_tree(max_tree_nodes)?.ground()?.to_cut_normal_form()
    }

    pub fn validate(&self) -> Result<(), ProofError> {
        let by_id: HashMap<&str, &Step> = self.steps.iter().map(|s| (s.id.as_str(), s)).collect();
        for s in &self.steps {
            if let Rule::Resolve { left, right, atom } = &s.rule {
                let get = |p: &String| {
                    by_id.get(p.as_str()).ok_or_else(|| ProofError::Dangling {
                        line: s.line,
                        id: s.id.clone(),
                        missing: p.clone(),
                    })
                };
                let (l, r) = (get(left)?, get(right)?);
                check_step(&s.id, &l.clause, &r.clause, atom, &s.clause)?;
            }
        }
        Ok(())
    }
}

/// Rename the variables of `c` by appending `suffix`.
fn rename(c: &Clause, suffix: &str) -> Clause {
    let s: Substitution = c.vars().into_iter().map(|v| (v, Term::Var(Symbol::new(&format!("{v}{suffix}"))))).collect();
    c.apply(&s)
}

/// `(Lσ − {Aσ}) ∪ (Rσ − {¬Aσ})` for a unifier `σ` of the chosen
/// literals, with duplicates merged.
fn resolvent(l: &Clause, r: &Clause, s: &Substitution, atom: &Literal) -> Clause {
    let pos = atom.apply(s);
    let neg = pos.complement();
    let mut lits: Vec<Literal> = Vec::new();
    for x in l.literals.iter().map(|x| x.apply(s)).filter(|x| *x != pos) {
        if !lits.contains(&x) {
            lits.push(x);
        }
    }
    for x in r.literals.iter().map(|x| x.apply(s)).filter(|x| *x != neg) {
        if !lits.contains(&x) {
            lits.push(x);
        }
    }
    Clause::new(lits)
}

/// A way to resolve `l` and `r` (variables apart) on `atom`, matching the
/// declared clause: the unifier, the resolvent and the substitution
/// turning the resolvent into the declared clause.
struct Replay {
    unifier: Substitution,
    /// The resolved literal of the left parent, before unification.
    resolved: Literal,
    onto_declared: Substitution,
}

fn replay(l: &Clause, r: &Clause, atom: &Literal, declared: &Clause) -> Option<Replay> {
    if !atom.positive {
        return None;
    }
    for a in l.literals.iter().filter(|x| x.positive && x.pred == atom.pred) {
        for b in r.literals.iter().filter(|x| !x.positive && x.pred == atom.pred) {
            let Some(s) = unify_args(&a.args, &b.args) else { continue };
            let mut probe = Substitution::new();
            if !atom.match_onto(&a.apply(&s), &mut probe) && !a.apply(&s).match_onto(atom, &mut probe) {
                continue;
            }
            let res = resolvent(l, r, &s, a);
            if let Some(onto) = instance_of(&res, declared) {
                return Some(Replay { unifier: s, resolved: a.clone(), onto_declared: onto });
            }
        }
    }
    None
}

fn check_step(id: &str, l: &Clause, r: &Clause, atom: &Literal, declared: &Clause) -> Result<(), ProofError> {
    let (l, r) = (rename(l, "_l"), rename(r, "_r"));
    match replay(&l, &r, atom, declared) {
        Some(_) => Ok(()),
        None => Err(ProofError::Invalid {
            id: id.to_owned(),
            reason: format!("`{declared}` is not a resolvent of `{l}` and `{r}` on `{atom}`"),
        }),
    }
}

impl Deduction {
    pub fn node_count(&self) -> usize {
        match &self.inference {
            Inference::Input => 1,
            Inference::Resolve { left, right, .. } => 1 + left.node_count() + right.node_count(),
        }
    }

    pub fn is_ground(&self) -> bool {
        self.clause.is_ground()
            && match &self.inference {
                Inference::Input => true,
                Inference::Resolve { atom, left, right } => atom.is_ground() && left.is_ground() && right.is_ground(),
            }
    }

    pub fn leaves(&self) -> Vec<&Clause> {
        let mut out = Vec::new();
        fn go<'a>(d: &'a Deduction, out: &mut Vec<&'a Clause>) {
            match &d.inference {
                Inference::Input => out.push(&d.clause),
                Inference::Resolve { left, right, .. } => {
                    go(left, out);
                    go(right, out);
                }
            }
        }
        go(self, &mut out);
        out
    }

    /// Instantiate the tree so that every clause is ground and every
    /// resolution step is a ground step. Variables left open by the
    /// unifiers become fresh constants `kN`.
    pub fn ground(&self) -> Result<Deduction, ProofError> {
        let mut fresh = FreshNames::new();
        let mut names = BTreeSet::new();
        fn collect(d: &Deduction, out: &mut BTreeSet<Symbol>) {
            for l in &d.clause.literals {
                l.args.iter().for_each(|a| a.collect_functions(out));
            }
            if let Inference::Resolve { atom, left, right } = &d.inference {
                atom.args.iter().for_each(|a| a.collect_functions(out));
                collect(left, out);
                collect(right, out);
            }
        }
        collect(self, &mut names);
        fresh.reserve_all(names.iter().map(|s| s.as_str()));
        let mut theta = Substitution::new();
        for v in self.clause.vars() {
            theta.insert_raw(v, Term::App(fresh.fresh("k"), vec![]));
        }
        ground_node(self, &theta, &mut fresh)
    }

    /// Closed tableau in cut normal form: a resolution on `A` becomes the
    /// cut `¬A, A`, with the parent containing `A` below `¬A` and the parent
    /// containing `¬A` below `A`; an input step contributes its clause.
    pub fn to_cut_normal_form(&self) -> Result<Tableau, ProofError> {
        if !self.clause.is_empty() {
            return Err(ProofError::NotRefutation(self.clause.to_string()));
        }
        if !self.is_ground() {
            return Err(ProofError::Invalid { id: self.id.clone(), reason: "proof is not ground".into() });
        }
        fn go(d: &Deduction) -> Vec<Node> {
            match &d.inference {
                Inference::Input => d.clause.literals.iter().cloned().map(Node::leaf).collect(),
                Inference::Resolve { atom, left, right } => {
                    vec![Node::new(atom.complement(), go(left)), Node::new(atom.clone(), go(right))]
                }
            }
        }
        let mut t = Tableau::new(go(self));
        t.mark_targets();
        Ok(t)
    }
}

/// Ground `d` under `theta`, which maps every variable of `d.clause` to a
/// ground term.
fn ground_node(d: &Deduction, theta: &Substitution, fresh: &mut FreshNames) -> Result<Deduction, ProofError> {
    let Inference::Resolve { atom, left, right } = &d.inference else {
        return Ok(Deduction { id: d.id.clone(), clause: d.clause.apply(theta), inference: Inference::Input });
    };
    let (l, r) = (rename(&left.clause, "_l"), rename(&right.clause, "_r"));
    let rp = replay(&l, &r, atom, &d.clause).ok_or_else(|| ProofError::Invalid {
        id: d.id.clone(),
        reason: format!("`{}` is not a resolvent of its parents", d.clause),
    })?;
    let full = |t: &Term| theta.apply(&rp.onto_declared.apply(&rp.unifier.apply(t)));
    // Variables that only occur in the resolved literal stay open; close
    // them with fresh constants shared by both parents.
    let resolved = Literal { args: rp.resolved.args.iter().map(full).collect(), ..rp.resolved.clone() };
    let close: Substitution =
        resolved.vars().into_iter().map(|v| (v, Term::App(fresh.fresh("k"), vec![]))).collect();
    let ga = resolved.apply(&close);
    let parent_theta = |c: &Clause, suffix: &str| -> Substitution {
        c.vars()
            .into_iter()
            .map(|v| (v, close.apply(&full(&Term::Var(Symbol::new(&format!("{v}{suffix}")))))))
            .collect()
    };
    let (tl, tr) = (parent_theta(&left.clause, "_l"), parent_theta(&right.clause, "_r"));
    let gl = ground_node(left, &tl, fresh)?;
    let gr = ground_node(right, &tr, fresh)?;
    let mut lits: Vec<Literal> = Vec::new();
    let nga = ga.complement();
    for x in gl.clause.literals.iter().filter(|x| **x != ga).chain(gr.clause.literals.iter().filter(|x| **x != nga)) {
        if !lits.contains(x) {
            lits.push(x.clone());
        }
    }
    Ok(Deduction {
        id: d.id.clone(),
        clause: Clause::new(lits),
        inference: Inference::Resolve { atom: ga, left: Box::new(gl), right: Box::new(gr) },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyper::{hyper_convert, HyperOptions};
    use crate::syntax::parse_clause_list;
    use crate::tableau::print_tableau;

    const FIG5: &str = "proof.
1 input p .
2 input ~p | q .
3 input ~q .
4 resolve(1, 2, p) q .
5 resolve(4, 3, q) $false .
";
    const FIG5_CUT: &str =
        "tableau.\n*\n  ~q\n    ~p\n      p {-> 2}\n    p\n      ~p {-> 2}\n      q {-> 1}\n  q\n    ~q {-> 1}\n";

    fn import(src: &str) -> Result<Tableau, ProofError> {
        parse_proof(src)?.import(DEFAULT_MAX_TREE_NODES)
    }

    #[test]
    fn fig5_import_and_hyper() {
        let doc = parse_proof(FIG5).unwrap();
        assert_eq!(print_proof(&doc), FIG5);
        let tree = doc.to_tree(100).unwrap();
        assert_eq!(tree.node_count(), 5);
        let t = import(FIG5).unwrap();
        assert_eq!(print_tableau(&t), FIG5_CUT);
        assert!(t.is_closed());
        let (h, trace) = hyper_convert(&t, &HyperOptions::default()).unwrap();
        assert_eq!(print_tableau(&h), "tableau.\n*\n  p\n    ~p {-> 1}\n    q\n      ~q {-> 2}\n");
        assert!(trace.simplifications >= 1);
    }

    #[test]
    fn single_step() {
        let t = import("proof.\n1 input p .\n2 input ~p .\n3 resolve(1, 2, p) $false .\n").unwrap();
        assert_eq!(print_tableau(&t), "tableau.\n*\n  ~p\n    p {-> 1}\n  p\n    ~p {-> 1}\n");
    }

    #[test]
    fn grounding_propagates_bindings() {
        let src = "proof.\n1 input p(X) | q(Y) .\n2 input ~p(a) .\n3 resolve(1, 2, p(a)) q(Y) .\n4 input ~q(Z) .\n5 resolve(3, 4, q(Y)) $false .\n";
        let doc = parse_proof(src).unwrap();
        doc.validate().unwrap();
        let g = doc.to_tree(100).unwrap().ground().unwrap();
        assert!(g.is_ground());
        let leaves: Vec<String> = g.leaves().iter().map(|c| c.to_string()).collect();
        assert_eq!(leaves, ["p(a) | q(k0)", "~p(a)", "~q(k0)"]);
        let t = g.to_cut_normal_form().unwrap();
        assert!(t.is_closed());
    }

    #[test]
    fn document_errors() {
        let e = parse_proof("proof.\n1 input p .\n2 resolve(1, 7, p) $false .\n").unwrap().to_tree(10).unwrap_err();
        assert!(matches!(e, ProofError::Dangling { line: 3, .. }));
        let doc = parse_proof("proof.\n1 input p .\n2 input ~p | q .\n3 resolve(1, 2, p) r .\n").unwrap();
        assert!(matches!(doc.validate(), Err(ProofError::Invalid { .. })));
        let e = parse_proof("proof.\n1 input a = b .\n2 paramod(1, 1) b = b .\n").unwrap_err();
        assert!(matches!(e, ProofError::UnsupportedRule { line: 3, .. }));
        assert!(e.to_string().contains("equality axioms"));
        match parse_proof("proof.\n1 input p( .\n").unwrap_err() {
            ProofError::Parse(p) => assert_eq!(p.line, 2),
            e => panic!("{e}"),
        }
        let e = import("proof.\n1 input p .\n2 input ~p | q .\n3 resolve(1, 2, p) q .\n").unwrap_err();
        assert!(matches!(e, ProofError::NotRefutation(_)));
    }

    #[test]
    fn dag_expansion_limit() {
        let mut src = String::from("proof.\n1 input p .\n2 input ~p | p .\n");
        for i in 3..60 {
            src.push_str(&format!("{i} resolve({}, {}, p) p .\n", i - 1, i - 1));
        }
        let doc = parse_proof(&src).unwrap();
        assert_eq!(doc.to_tree(1000).unwrap_err(), ProofError::SizeLimit { limit: 1000 });
    }

    #[test]
    fn bindings_roundtrip() {
        let src = "proof.\n1 input p(X) .\n2 input ~p(a) .\n3 resolve(1, 2, p(a)) $false {X := a} .\n";
        let doc = parse_proof(src).unwrap();
        assert_eq!(doc.steps[2].bindings.len(), 1);
        assert_eq!(print_proof(&doc), src);
    }

    #[test]
    fn saturation_proofs_replay() {
        let cs = parse_clause_list(
            "p(a). ~p(X) | q(X). ~q(X) | r(X, f(X)). ~r(a, Y) | s(Y). ~s(f(a)).",
        )
        .unwrap();
        let doc = saturate::refute(&cs, 10_000).unwrap();
        doc.validate().unwrap();
        let again = parse_proof(&print_proof(&doc)).unwrap();
        assert_eq!(print_proof(&again), print_proof(&doc));
        let t = doc.to_tree(DEFAULT_MAX_TREE_NODES).unwrap().ground().unwrap().to_cut_normal_form().unwrap();
        assert!(t.is_closed());
        let (h, _) = hyper_convert(&t, &HyperOptions::default()).unwrap();
        assert!(h.is_hyper() && h.is_regular());
        assert_eq!(saturate::refute(&parse_clause_list("p. ~p | q.").unwrap(), 100), Err(saturate::SaturationError::Saturated));
    }
}
