//! Proof documents, one step per line:
//!
//! ```text
//! proof.
//! 1 input p .
//! 2 input ~p | q .
//! 3 input ~q .
//! 4 resolve(1, 2, p) q .
//! 5 resolve(4, 3, q) $false .
//! ```
//!
//! `resolve(l, r, A)` resolves step `l`, which contains `A`, with step `r`,
//! which contains `~A`. A step may end with recorded unifier bindings
//! `{X := a, Y := f(Z)}` before the final `.`. `%` starts a comment line.

use std::fmt::Write;

use super::{ProofDoc, ProofError, Rule, Step};
use crate::symbol::Symbol;
use crate::syntax::{parse_clause, parse_literal, parse_term, ParseError};

pub const HEADER: &str = "proof.";

pub fn print_proof(doc: &ProofDoc) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for s in &doc.steps {
        match &s.rule {
            Rule::Input => write!(out, "{} input {}", s.id, s.clause).unwrap(),
            Rule::Resolve { left, right, atom } => {
                write!(out, "{} resolve({left}, {right}, {atom}) {}", s.id, s.clause).unwrap()
            }
        }
        if !s.bindings.is_empty() {
            let b: Vec<String> = s.bindings.iter().map(|(v, t)| format!("{} := {t}", crate::logic::Term::Var(*v))).collect();
            write!(out, " {{{}}}", b.join(", ")).unwrap();
        }
        out.push_str(" .\n");
    }
    out
}

/// Split at commas outside parentheses.
fn split_top(s: &str) -> Vec<(usize, &str)> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push((start, &s[start..]));
    parts
}

fn leading_ws(s: &str) -> usize {
    s.len() - s.trim_start().len()
}

fn parse_step(text: &str, line: usize) -> Result<Step, ProofError> {
    let err = |col: usize, m: &str| ProofError::Parse(ParseError::new(line, col, m));
    let body = text.trim_end();
    let Some(body) = body.strip_suffix('.') else {
        return Err(err(body.len() + 1, "step must end with `.`"));
    };
    let id_len = body.find(char::is_whitespace).ok_or_else(|| err(1, "expected `<id> <rule> <clause> .`"))?;
    let id = &body[..id_len];
    let mut pos = id_len + leading_ws(&body[id_len..]);
    let rest = &body[pos..];
    let rule_len = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(rest.len());
    let rule_name = &rest[..rule_len];
    let rule = match rule_name {
        "input" => {
            pos += rule_len;
            Rule::Input
        }
        "resolve" => {
            let open = pos + rule_len;
            if !body[open..].starts_with('(') {
                return Err(err(open + 1, "expected `(` after `resolve`"));
            }
            let mut depth = 0;
            let mut close = None;
            for (i, c) in body[open..].char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => {
                        depth -= 1;
                        if depth == 0 {
                            close = Some(open + i);
                            break;
                        }
                    }
                    _ => {}
                }
            }
            let close = close.ok_or_else(|| err(open + 1, "unbalanced `(`"))?;
            let args = split_top(&body[open + 1..close]);
            if args.len() != 3 {
                return Err(err(open + 1, "`resolve` takes two step ids and an atom"));
            }
            let col = |k: usize| open + 2 + args[k].0 + leading_ws(args[k].1);
            let atom = parse_literal(args[2].1.trim()).map_err(|e| e.offset(line, col(2)))?;
            if !atom.positive {
                return Err(err(col(2), "the resolved atom must be positive"));
            }
            pos = close + 1;
            Rule::Resolve { left: args[0].1.trim().to_owned(), right: args[1].1.trim().to_owned(), atom }
        }
        other => {
            let hint = if other.starts_with("para") {
                "; paramodulation is not supported, add equality axioms and re-prove with binary resolution"
            } else {
                "; expected `input` or `resolve`"
            };
            return Err(ProofError::UnsupportedRule { line, rule: other.to_owned(), hint: hint.to_owned() });
        }
    };
    let mut clause_text = &body[pos..];
    let mut bindings = Vec::new();
    let trimmed = clause_text.trim_end();
    if trimmed.ends_with('}') {
        let open = trimmed.rfind('{').ok_or_else(|| err(pos + trimmed.len(), "unbalanced `}`"))?;
        let inner_start = pos + open + 1;
        for (off, part) in split_top(&trimmed[open + 1..trimmed.len() - 1]) {
            if part.trim().is_empty() {
                continue;
            }
            let col = inner_start + off + leading_ws(part) + 1;
            let (v, t) = part.split_once(":=").ok_or_else(|| err(col, "expected `Var := term`"))?;
            let v = v.trim();
            if !v.starts_with(|c: char| c.is_ascii_uppercase() || c == '_') {
                return Err(err(col, "binding must start with a variable"));
            }
            let t = parse_term(t.trim()).map_err(|e| e.offset(line, col))?;
            bindings.push((Symbol::new(v), t));
        }
        clause_text = &trimmed[..open];
    }
    let col = pos + leading_ws(clause_text) + 1;
    let clause = parse_clause(clause_text.trim()).map_err(|e| e.offset(line, col))?;
    Ok(Step { id: id.to_owned(), rule, clause, bindings, line })
}

pub fn parse_proof(src: &str) -> Result<ProofDoc, ProofError> {
    let mut lines = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('%'));
    match lines.next() {
        Some((_, l)) if l.trim() == HEADER => {}
        Some((n, _)) => return Err(ParseError::new(n, 1, format!("expected `{HEADER}`")).into()),
        None => return Err(ProofError::Empty),
    }
    let mut doc = ProofDoc::default();
    for (n, l) in lines {
        let indent = leading_ws(l);
        let step = parse_step(&l[indent..], n).map_err(|e| match e {
            ProofError::Parse(p) if p.line == n => ProofError::Parse(ParseError::new(n, p.column + indent, p.message)),
            e => e,
        })?;
        doc.steps.push(step);
    }
    if doc.steps.is_empty() {
        return Err(ProofError::Empty);
    }
    Ok(doc)
}
