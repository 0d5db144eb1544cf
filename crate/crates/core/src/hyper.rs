//! Hyper conversion: turns a closed clausal tableau into a regular,
//! leaf-closed tableau whose negative nodes are exactly its leaves.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use thiserror::Error;

use crate::logic::Literal;
use crate::tableau::{Node, Tableau};

pub const DEFAULT_MAX_NODES: usize = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MeasureItem {
    Num(usize),
    /// Greater than every number.
    Omega,
}

/// `I₁ … Iₙ ω |badlits|`, compared lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Measure(pub Vec<MeasureItem>);

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match m {
                MeasureItem::Num(n) => write!(f, "{n}")?,
                MeasureItem::Omega => f.write_str("ω")?,
            }
        }
        Ok(())
    }
}

/// Measure of the node at `path`: right-sibling counts along the path from
/// the root (the root itself contributes 0), then `ω`, then the number of
/// distinct negative literals labeling inner proper descendants.
pub fn measure(t: &Tableau, path: &[usize]) -> Measure {
    let mut items = vec![MeasureItem::Num(0)];
    let mut node = &t.root;
    for &i in path {
        items.push(MeasureItem::Num(node.children.len() - i - 1));
        node = &node.children[i];
    }
    items.push(MeasureItem::Omega);
    items.push(MeasureItem::Num(badlits(node).len()));
    Measure(items)
}

fn badlits(n: &Node) -> BTreeSet<&Literal> {
    fn go<'a>(n: &'a Node, out: &mut BTreeSet<&'a Literal>) {
        for c in &n.children {
            if !c.is_leaf() && !c.lit().positive {
                out.insert(c.lit());
            }
            go(c, out);
        }
    }
    let mut out = BTreeSet::new();
    go(n, &mut out);
    out
}

static VIOLATIONS: AtomicUsize = AtomicUsize::new(0);

/// Rounds, over every conversion in this process, whose measure did not
/// strictly decrease.
pub fn measure_violations() -> usize {
    VIOLATIONS.load(Ordering::Relaxed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round {
    pub selected: Vec<usize>,
    pub measure: Measure,
    pub size_after: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConversionTrace {
    pub rounds: Vec<Round>,
    pub total_rounds: usize,
    /// Edge replacements made by simplification, initial pass included.
    pub simplifications: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperOptions {
    pub max_nodes: usize,
    pub trace: bool,
}

impl Default for HyperOptions {
    fn default() -> Self {
        HyperOptions { max_nodes: DEFAULT_MAX_NODES, trace: false }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HyperError {
    #[error("input tableau is not closed")]
    NotClosed,
    #[error("tableau grew beyond {limit} nodes")]
    SizeLimit { limit: usize },
}

fn is_bad(n: &Node) -> bool {
    !n.is_leaf() && !n.lit().positive
}

/// Path of the first node in pre-order with an inner child carrying a
/// negative literal.
fn select(n: &Node, path: &mut Vec<usize>) -> bool {
    if n.children.iter().any(is_bad) {
        return true;
    }
    for (i, c) in n.children.iter().enumerate() {
        path.push(i);
        if select(c, path) {
            return true;
        }
        path.pop();
    }
    false
}

fn graft(n: &mut Node, lit: &Literal, copy: &[Node]) {
    if n.is_leaf() {
        if n.literal.as_ref() == Some(lit) {
            n.children = copy.to_vec();
        }
        return;
    }
    for c in &mut n.children {
        graft(c, lit, copy);
    }
}

pub fn hyper_convert(input: &Tableau, opts: &HyperOptions) -> Result<(Tableau, ConversionTrace), HyperError> {
    if !input.is_closed() {
        return Err(HyperError::NotClosed);
    }
    let mut t = input.clone();
    let mut trace = ConversionTrace { simplifications: t.simplify(), ..ConversionTrace::default() };
    let mut previous: Option<Measure> = None;
    loop {
        let mut path = Vec::new();
        if !select(&t.root, &mut path) {
            break;
        }
        let m = measure(&t, &path);
        if previous.as_ref().is_some_and(|p| m >= *p) {
            VIOLATIONS.fetch_add(1, Ordering::Relaxed);
        }
        let n_prime = t.node_at_mut(&path);
        let ni = n_prime.children.iter().position(is_bad).unwrap();
        let target = n_prime.children[ni].lit().complement();
        let mut u = n_prime.clone();
        u.children[ni].children.clear();
        n_prime.children = std::mem::take(&mut n_prime.children[ni].children);
        graft(n_prime, &target, &u.children);
        if t.node_count() > opts.max_nodes {
            return Err(HyperError::SizeLimit { limit: opts.max_nodes });
        }
        trace.simplifications += t.simplify();
        trace.total_rounds += 1;
        if opts.trace {
            trace.rounds.push(Round { selected: path, measure: m.clone(), size_after: t.size() });
        }
        previous = Some(m);
    }
    Ok((t, trace))
}
