//! Tableau documents: one node per line, two spaces of indentation per
//! level.
//!
//! ```text
//! tableau.
//! *
//!   ~r(a) [G]
//!     r(a) [G] {-> 1}
//! ```
//!
//! The root is `*`. A node line holds the literal, an optional side in
//! brackets and an optional closing target `{-> d}`, where `d` is the depth
//! of the target ancestor (the root has depth 0). `%` starts a comment line.

use std::fmt::Write;

use super::{Node, Side, Tableau};
use crate::syntax::{parse_literal, ParseError};

pub const HEADER: &str = "tableau.";

pub fn print_tableau(t: &Tableau) -> String {
    let mut out = String::from(HEADER);
    out.push_str("\n*\n");
    fn go(n: &Node, depth: usize, out: &mut String) {
        for _ in 0..depth {
            out.push_str("  ");
        }
        write!(out, "{}", n.lit()).unwrap();
        if let Some(s) = n.side {
            write!(out, " [{s}]").unwrap();
        }
        if let Some(d) = n.target {
            write!(out, " {{-> {d}}}").unwrap();
        }
        out.push('\n');
        for c in &n.children {
            go(c, depth + 1, out);
        }
    }
    for c in &t.root.children {
        go(c, 1, &mut out);
    }
    out
}

fn parse_node_line(text: &str, line: usize, col: usize) -> Result<Node, ParseError> {
    let err = |m: &str| ParseError::new(line, col, m);
    let mut rest = text.trim_end();
    let mut target = None;
    if rest.ends_with('}') {
        let open = rest.rfind('{').ok_or_else(|| err("unbalanced `}`"))?;
        let inner = rest[open + 1..rest.len() - 1].trim();
        let num = inner.strip_prefix("->").ok_or_else(|| err("expected `{-> depth}`"))?.trim();
        target = Some(num.parse::<usize>().map_err(|_| err("target depth must be a number"))?);
        rest = rest[..open].trim_end();
    }
    let mut side = None;
    if rest.ends_with(']') {
        let open = rest.rfind('[').ok_or_else(|| err("unbalanced `]`"))?;
        side = Some(match rest[open + 1..rest.len() - 1].trim() {
            "F" => Side::F,
            "G" => Side::G,
            other => return Err(err(&format!("unknown side `{other}`"))),
        });
        rest = rest[..open].trim_end();
    }
    let literal = parse_literal(rest).map_err(|e| e.offset(line, col))?;
    Ok(Node { literal: Some(literal), side, children: Vec::new(), target })
}

pub fn parse_tableau(src: &str) -> Result<Tableau, ParseError> {
    let mut lines = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('%'));
    match lines.next() {
        Some((_, l)) if l.trim() == HEADER => {}
        Some((n, _)) => return Err(ParseError::new(n, 1, format!("expected `{HEADER}`"))),
        None => return Err(ParseError::new(1, 1, "empty tableau document")),
    }
    match lines.next() {
        Some((_, l)) if l.trim_end() == "*" => {}
        Some((n, _)) => return Err(ParseError::new(n, 1, "expected root line `*`")),
        None => return Err(ParseError::new(1, 1, "missing root line `*`")),
    }
    // Stack of open nodes; index 0 is the root.
    let mut stack: Vec<Node> = vec![Node { literal: None, side: None, children: Vec::new(), target: None }];
    for (n, l) in lines {
        let indent = l.len() - l.trim_start_matches(' ').len();
        if indent % 2 != 0 || indent == 0 {
            return Err(ParseError::new(n, 1, "indentation must be a positive multiple of two spaces"));
        }
        let depth = indent / 2;
        if depth > stack.len() {
            return Err(ParseError::new(n, indent + 1, "node is indented more than one level below its parent"));
        }
        while stack.len() > depth {
            let done = stack.pop().unwrap();
            stack.last_mut().unwrap().children.push(done);
        }
        stack.push(parse_node_line(&l[indent..], n, indent + 1)?);
    }
    while stack.len() > 1 {
        let done = stack.pop().unwrap();
        stack.last_mut().unwrap().children.push(done);
    }
    Ok(Tableau { root: stack.pop().unwrap() })
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG4_RIGHT: &str = "tableau.\n*\n  p\n    ~p {-> 1}\n    q\n      ~q {-> 2}\n";

    #[test]
    fn roundtrip() {
        let t = parse_tableau(FIG4_RIGHT).unwrap();
        assert_eq!(t.size(), 3);
        assert_eq!(print_tableau(&t), FIG4_RIGHT);
        let with_sides = "tableau.\n*\n  p(a,f(X)) [F]\n    ~p(a,f(X)) [G] {-> 1}\n";
        assert_eq!(print_tableau(&parse_tableau(with_sides).unwrap()), with_sides);
        let empty = "tableau.\n*\n";
        let t = parse_tableau(empty).unwrap();
        assert!(t.root.children.is_empty() && t.is_closed());
        assert_eq!(print_tableau(&t), empty);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_tableau("tableau.\n*\n  p\n       q\n").unwrap_err();
        assert_eq!(e.line, 4);
        let e = parse_tableau("tableau.\n*\n  p [H]\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_tableau("tableau.\n*\n  p(\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(parse_tableau("*\n").is_err());
    }
}
