//! TPTP FOF/CNF subset: parser and printer.
//!
//! Supported: `fof(name, role, formula).` and `cnf(name, role, clause).`
//! statements with `~ & | => <= <=> <~> ! ? = !=`, `$true`, `$false`,
//! `%` line comments and `/* */` block comments. Unquantified variables in
//! `fof` statements are kept as free variables.

use std::fmt;

use thiserror::Error;

use crate::logic::{Clause, Formula, Literal, Quantifier, Term, EQUALITY};
use crate::symbol::Symbol;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }

    /// Shift the position of an error found in a fragment that starts at
    /// `line:column` of an enclosing document.
    pub fn offset(mut self, line: usize, column: usize) -> Self {
        if self.line == 1 {
            self.column += column - 1;
        }
        self.line += line - 1;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Lower(String),
    Upper(String),
    Quoted(String),
    Dollar(String),
    Number(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Dot,
    Colon,
    Bang,
    Question,
    Tilde,
    And,
    Or,
    Implies,
    RevImplies,
    Equiv,
    Xor,
    Nor,
    Nand,
    Eq,
    Neq,
    Assign,
    Arrow,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Lower(s) | Tok::Upper(s) | Tok::Dollar(s) | Tok::Number(s) => return write!(f, "`{s}`"),
            Tok::Quoted(s) => return write!(f, "`'{s}'`"),
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrack => "[",
            Tok::RBrack => "]",
            Tok::Comma => ",",
            Tok::Dot => ".",
            Tok::Colon => ":",
            Tok::Bang => "!",
            Tok::Question => "?",
            Tok::Tilde => "~",
            Tok::And => "&",
            Tok::Or => "|",
            Tok::Implies => "=>",
            Tok::RevImplies => "<=",
            Tok::Equiv => "<=>",
            Tok::Xor => "<~>",
            Tok::Nor => "~|",
            Tok::Nand => "~&",
            Tok::Eq => "=",
            Tok::Neq => "!=",
            Tok::Assign => ":=",
            Tok::Arrow => "->",
            Tok::Eof => return f.write_str("end of input"),
        };
        write!(f, "`{s}`")
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    macro_rules! advance {
        ($n:expr) => {{
            for _ in 0..$n {
                if chars[i] == '\n' {
                    line += 1;
                    col = 1;
                } else {
                    col += 1;
                }
                i += 1;
            }
        }};
    }
    while i < chars.len() {
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        let (l0, c0) = (line, col);
        if c.is_whitespace() {
            advance!(1);
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                advance!(1);
            }
            continue;
        }
        if c == '/' && next == Some('*') {
            advance!(2);
            loop {
                if i + 1 >= chars.len() {
                    return Err(ParseError::new(l0, c0, "unterminated block comment"));
                }
                if chars[i] == '*' && chars[i + 1] == '/' {
                    advance!(2);
                    break;
                }
                advance!(1);
            }
            continue;
        }
        let push = |out: &mut Vec<Spanned>, tok| out.push(Spanned { tok, line: l0, column: c0 });
        if c.is_ascii_alphabetic() || c == '_' || c == '$' {
            let start = i;
            advance!(1);
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                advance!(1);
            }
            let word: String = chars[start..i].iter().collect();
            let tok = if c == '$' {
                Tok::Dollar(word)
            } else if c.is_ascii_uppercase() || c == '_' {
                Tok::Upper(word)
            } else {
                Tok::Lower(word)
            };
            push(&mut out, tok);
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                advance!(1);
            }
            push(&mut out, Tok::Number(chars[start..i].iter().collect()));
            continue;
        }
        if c == '\'' {
            advance!(1);
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None => return Err(ParseError::new(l0, c0, "unterminated quoted name")),
                    Some('\\') => {
                        if let Some(&e) = chars.get(i + 1) {
                            s.push(e);
                            advance!(2);
                        } else {
                            return Err(ParseError::new(l0, c0, "unterminated quoted name"));
                        }
                    }
                    Some('\'') => {
                        advance!(1);
                        break;
                    }
                    Some(&ch) => {
                        s.push(ch);
                        advance!(1);
                    }
                }
            }
            push(&mut out, Tok::Quoted(s));
            continue;
        }
        let three: String = chars[i..chars.len().min(i + 3)].iter().collect();
        let two: String = chars[i..chars.len().min(i + 2)].iter().collect();
        let (tok, n) = if three == "<=>" {
            (Tok::Equiv, 3)
        } else if three == "<~>" {
            (Tok::Xor, 3)
        } else if two == "=>" {
            (Tok::Implies, 2)
        } else if two == "<=" {
            (Tok::RevImplies, 2)
        } else if two == "!=" {
            (Tok::Neq, 2)
        } else if two == "~|" {
            (Tok::Nor, 2)
        } else if two == "~&" {
            (Tok::Nand, 2)
        } else if two == ":=" {
            (Tok::Assign, 2)
        } else if two == "->" {
            (Tok::Arrow, 2)
        } else {
            let t = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBrack,
                ']' => Tok::RBrack,
                ',' => Tok::Comma,
                '.' => Tok::Dot,
                ':' => Tok::Colon,
                '!' => Tok::Bang,
                '?' => Tok::Question,
                '~' => Tok::Tilde,
                '&' => Tok::And,
                '|' => Tok::Or,
                '=' => Tok::Eq,
                _ => return Err(ParseError::new(l0, c0, format!("unexpected character `{c}`"))),
            };
            (t, 1)
        };
        advance!(n);
        push(&mut out, tok);
    }
    out.push(Spanned { tok: Tok::Eof, line, column: col });
    Ok(out)
}

/// Role of a statement, reduced to what the pipelines need.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Role {
    Axiom,
    Conjecture,
    NegatedConjecture,
    Other(String),
}

impl Role {
    fn from_name(s: &str) -> Role {
        match s {
            "axiom" | "hypothesis" | "definition" | "assumption" | "lemma" | "theorem" | "plain" => Role::Axiom,
            "conjecture" => Role::Conjecture,
            "negated_conjecture" => Role::NegatedConjecture,
            other => Role::Other(other.to_owned()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StatementKind {
    Fof,
    Cnf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    pub name: String,
    pub role: Role,
    pub kind: StatementKind,
    pub formula: Formula,
}

/// A parsed problem file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Problem {
    pub statements: Vec<Statement>,
}

impl Problem {
    /// Conjunction of all statements whose role is not a conjecture.
    pub fn axioms(&self) -> Formula {
        Formula::and(
            self.statements
                .iter()
                .filter(|s| !matches!(s.role, Role::Conjecture))
                .map(|s| s.formula.clone())
                .collect(),
        )
    }

    /// Conjunction of the conjectures, if any.
    pub fn conjecture(&self) -> Option<Formula> {
        let cs: Vec<Formula> = self
            .statements
            .iter()
            .filter(|s| matches!(s.role, Role::Conjecture))
            .map(|s| s.formula.clone())
            .collect();
        (!cs.is_empty()).then(|| Formula::and(cs))
    }

    /// Conjunction of every statement regardless of role.
    pub fn all(&self) -> Formula {
        Formula::and(self.statements.iter().map(|s| s.formula.clone()).collect())
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Parser, ParseError> {
        Ok(Parser { toks: lex(src)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, msg: impl Into<String>) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError::new(t.line, t.column, msg)
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            Err(self.error_here(format!("expected {tok}, found {}", self.peek())))
        }
    }

    fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    fn expect_eof(&self) -> Result<(), ParseError> {
        if self.at_eof() {
            Ok(())
        } else {
            Err(self.error_here(format!("unexpected {}", self.peek())))
        }
    }

    fn problem(&mut self) -> Result<Problem, ParseError> {
        let mut statements = Vec::new();
        while !self.at_eof() {
            statements.push(self.statement()?);
        }
        Ok(Problem { statements })
    }

    fn statement(&mut self) -> Result<Statement, ParseError> {
        let kind = match self.peek().clone() {
            Tok::Lower(w) if w == "fof" => StatementKind::Fof,
            Tok::Lower(w) if w == "cnf" => StatementKind::Cnf,
            Tok::Lower(w) if w == "include" => return Err(self.error_here("include directives are not supported")),
            other => return Err(self.error_here(format!("expected `fof` or `cnf`, found {other}"))),
        };
        self.next();
        self.expect(Tok::LParen)?;
        let name = match self.next().tok {
            Tok::Lower(s) | Tok::Upper(s) | Tok::Quoted(s) | Tok::Number(s) => s,
            other => {
                self.pos -= 1;
                return Err(self.error_here(format!("expected statement name, found {other}")));
            }
        };
        self.expect(Tok::Comma)?;
        let role = match self.next().tok {
            Tok::Lower(s) => Role::from_name(&s),
            other => {
                self.pos -= 1;
                return Err(self.error_here(format!("expected role, found {other}")));
            }
        };
        self.expect(Tok::Comma)?;
        let formula = self.formula()?;
        if kind == StatementKind::Cnf {
            if let Err(msg) = formula_to_clause(&formula) {
                return Err(self.error_here(msg));
            }
        }
        if *self.peek() == Tok::Comma {
            self.skip_annotations()?;
        }
        self.expect(Tok::RParen)?;
        self.expect(Tok::Dot)?;
        Ok(Statement { name, role, kind, formula })
    }

    fn skip_annotations(&mut self) -> Result<(), ParseError> {
        let mut depth = 0usize;
        loop {
            match self.peek() {
                Tok::Eof => return Err(self.error_here("unterminated annotations")),
                Tok::LParen | Tok::LBrack => depth += 1,
                Tok::RParen | Tok::RBrack if depth == 0 => return Ok(()),
                Tok::RParen | Tok::RBrack => depth -= 1,
                _ => {}
            }
            self.next();
        }
    }

    // formula := or_level [ (<=> | <~> | => | <=) or_level ]
    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or_level()?;
        let op = self.peek().clone();
        match op {
            Tok::Equiv | Tok::Xor | Tok::Implies | Tok::RevImplies | Tok::Nor | Tok::Nand => {
                self.next();
                let rhs = self.or_level()?;
                Ok(match op {
                    Tok::Equiv => Formula::equiv(lhs, rhs),
                    Tok::Xor => Formula::not(Formula::equiv(lhs, rhs)),
                    Tok::Implies => Formula::implies(lhs, rhs),
                    Tok::RevImplies => Formula::implies(rhs, lhs),
                    Tok::Nor => Formula::not(Formula::Or(vec![lhs, rhs])),
                    _ => Formula::not(Formula::And(vec![lhs, rhs])),
                })
            }
            _ => Ok(lhs),
        }
    }

    fn or_level(&mut self) -> Result<Formula, ParseError> {
        let first = self.and_level()?;
        if *self.peek() != Tok::Or {
            return Ok(first);
        }
        let mut parts = vec![first];
        while *self.peek() == Tok::Or {
            self.next();
            parts.push(self.and_level()?);
        }
        Ok(Formula::Or(parts))
    }

    fn and_level(&mut self) -> Result<Formula, ParseError> {
        let first = self.unit()?;
        if *self.peek() != Tok::And {
            return Ok(first);
        }
        let mut parts = vec![first];
        while *self.peek() == Tok::And {
            self.next();
            parts.push(self.unit()?);
        }
        Ok(Formula::And(parts))
    }

    fn unit(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.next();
                if self.starts_atom() {
                    match self.atomic()? {
                        Formula::Lit(l) => Ok(Formula::Lit(l.complement())),
                        other => Ok(Formula::not(other)),
                    }
                } else {
                    Ok(Formula::not(self.unit()?))
                }
            }
            Tok::Bang | Tok::Question => {
                let q = if *self.peek() == Tok::Bang { Quantifier::Forall } else { Quantifier::Exists };
                self.next();
                self.expect(Tok::LBrack)?;
                let mut vars = Vec::new();
                loop {
                    match self.next().tok {
                        Tok::Upper(v) => vars.push(Symbol::new(&v)),
                        other => {
                            self.pos -= 1;
                            return Err(self.error_here(format!("expected variable, found {other}")));
                        }
                    }
                    if *self.peek() == Tok::Comma {
                        self.next();
                    } else {
                        break;
                    }
                }
                self.expect(Tok::RBrack)?;
                self.expect(Tok::Colon)?;
                let body = self.unit()?;
                Ok(vars.into_iter().rev().fold(body, |acc, v| Formula::Quant(q, v, Box::new(acc))))
            }
            Tok::LParen => {
                self.next();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            _ => self.atomic(),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Tok::Lower(_) | Tok::Quoted(_) | Tok::Dollar(_) | Tok::Upper(_) | Tok::Number(_))
    }

    fn atomic(&mut self) -> Result<Formula, ParseError> {
        if let Tok::Dollar(w) = self.peek().clone() {
            match w.as_str() {
                "$true" => {
                    self.next();
                    return Ok(Formula::True);
                }
                "$false" => {
                    self.next();
                    return Ok(Formula::False);
                }
                _ => return Err(self.error_here(format!("unsupported defined symbol `{w}`"))),
            }
        }
        let (line, column) = (self.toks[self.pos].line, self.toks[self.pos].column);
        let lhs = self.term()?;
        match self.peek() {
            Tok::Eq | Tok::Neq => {
                let positive = *self.peek() == Tok::Eq;
                self.next();
                let rhs = self.term()?;
                Ok(Formula::Lit(Literal { positive, pred: Symbol::new(EQUALITY), args: vec![lhs, rhs] }))
            }
            _ => match lhs {
                Term::App(p, args) => Ok(Formula::Lit(Literal { positive: true, pred: p, args })),
                Term::Var(v) => Err(ParseError::new(line, column, format!("variable `{v}` used as a formula"))),
            },
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.next().tok {
            Tok::Upper(v) => Ok(Term::Var(Symbol::new(&v))),
            Tok::Lower(f) | Tok::Quoted(f) | Tok::Number(f) => {
                let mut args = Vec::new();
                if *self.peek() == Tok::LParen {
                    self.next();
                    loop {
                        args.push(self.term()?);
                        if *self.peek() == Tok::Comma {
                            self.next();
                        } else {
                            break;
                        }
                    }
                    self.expect(Tok::RParen)?;
                }
                Ok(Term::App(Symbol::new(&f), args))
            }
            other => {
                self.pos -= 1;
                Err(self.error_here(format!("expected term, found {other}")))
            }
        }
    }

    fn clause(&mut self) -> Result<Clause, ParseError> {
        let f = self.formula()?;
        formula_to_clause(&f).map_err(|m| self.error_here(m))
    }
}

fn formula_to_clause(f: &Formula) -> Result<Clause, String> {
    fn go(f: &Formula, out: &mut Vec<Literal>) -> Result<(), String> {
        match f {
            Formula::Lit(l) => {
                out.push(l.clone());
                Ok(())
            }
            Formula::False => Ok(()),
            Formula::Or(fs) => fs.iter().try_for_each(|g| go(g, out)),
            _ => Err("expected a disjunction of literals".to_owned()),
        }
    }
    let mut lits = Vec::new();
    go(f, &mut lits)?;
    Ok(Clause::new(lits))
}

pub fn parse_problem(src: &str) -> Result<Problem, ParseError> {
    Parser::new(src)?.problem()
}

pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(src)?;
    let f = p.formula()?;
    p.expect_eof()?;
    Ok(f)
}

/// A disjunction of literals; `$false` is the empty clause.
pub fn parse_clause(src: &str) -> Result<Clause, ParseError> {
    let mut p = Parser::new(src)?;
    let c = p.clause()?;
    p.expect_eof()?;
    Ok(c)
}

pub fn parse_literal(src: &str) -> Result<Literal, ParseError> {
    match parse_formula(src)? {
        Formula::Lit(l) => Ok(l),
        _ => Err(ParseError::new(1, 1, "expected a literal")),
    }
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.expect_eof()?;
    Ok(t)
}

/// Clause list: one clause per statement, each terminated by `.`; also
/// accepts `cnf(...)` statements.
pub fn parse_clause_list(src: &str) -> Result<Vec<Clause>, ParseError> {
    let mut p = Parser::new(src)?;
    let mut out = Vec::new();
    while !p.at_eof() {
        if matches!(p.peek(), Tok::Lower(w) if w == "cnf" || w == "fof") && *p.peek_at(1) == Tok::LParen {
            let st = p.statement()?;
            let mut c = formula_to_clause(&st.formula).map_err(|m| p.error_here(m))?;
            if st.role == Role::Conjecture {
                return Err(p.error_here("conjecture role is not allowed in a clause list"));
            }
            c.literals.dedup();
            out.push(c);
        } else {
            out.push(p.clause()?);
            p.expect(Tok::Dot)?;
        }
    }
    Ok(out)
}

fn is_plain_functor(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_lowercase()) && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn write_functor(f: &mut fmt::Formatter<'_>, s: &str) -> fmt::Result {
    if is_plain_functor(s) || (!s.is_empty() && s.chars().all(|c| c.is_ascii_digit())) {
        f.write_str(s)
    } else {
        f.write_str("'")?;
        for c in s.chars() {
            if c == '\'' || c == '\\' {
                f.write_str("\\")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("'")
    }
}

/// Variables print in TPTP form: first letter upper-cased, other
/// characters outside `[A-Za-z0-9_]` replaced by `_`.
pub fn var_display(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for (i, c) in s.chars().enumerate() {
        let c = if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' };
        if i == 0 {
            if c.is_ascii_lowercase() {
                out.push(c.to_ascii_uppercase());
            } else if c.is_ascii_uppercase() {
                out.push(c);
            } else {
                out.push('V');
                out.push(c);
            }
        } else {
            out.push(c);
        }
    }
    if out.is_empty() {
        out.push('V');
    }
    out
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(&var_display(v.as_str())),
            Term::App(g, args) => {
                write_functor(f, g.as_str())?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{a}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pred.as_str() == EQUALITY && self.args.len() == 2 {
            let op = if self.positive { "=" } else { "!=" };
            return write!(f, "{} {op} {}", self.args[0], self.args[1]);
        }
        if !self.positive {
            f.write_str("~")?;
        }
        Term::App(self.pred, self.args.clone()).fmt(f)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.literals.is_empty() {
            return f.write_str("$false");
        }
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

fn is_unitary(f: &Formula) -> bool {
    matches!(f, Formula::Lit(_) | Formula::True | Formula::False | Formula::Not(_) | Formula::Quant(..))
}

fn write_operand(f: &mut fmt::Formatter<'_>, g: &Formula) -> fmt::Result {
    if is_unitary(g) {
        write!(f, "{g}")
    } else {
        write!(f, "({g})")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Lit(l) => write!(f, "{l}"),
            Formula::True => f.write_str("$true"),
            Formula::False => f.write_str("$false"),
            Formula::And(fs) | Formula::Or(fs) => {
                let op = if matches!(self, Formula::And(_)) { " & " } else { " | " };
                if fs.is_empty() {
                    return f.write_str(if matches!(self, Formula::And(_)) { "$true" } else { "$false" });
                }
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(op)?;
                    }
                    write_operand(f, g)?;
                }
                Ok(())
            }
            Formula::Not(g) => {
                f.write_str("~")?;
                match **g {
                    Formula::Lit(_) => write!(f, "({g})"),
                    _ => write_operand(f, g),
                }
            }
            Formula::Implies(a, b) | Formula::Equiv(a, b) => {
                let op = if matches!(self, Formula::Implies(..)) { " => " } else { " <=> " };
                write_operand(f, a)?;
                f.write_str(op)?;
                write_operand(f, b)
            }
            Formula::Quant(q, v, g) => {
                let sym = if *q == Quantifier::Forall { "!" } else { "?" };
                write!(f, "{sym} [{}] : ", var_display(v.as_str()))?;
                write_operand(f, g)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_example_problem() {
        let src = "% example\nfof(f1, axiom, ! [X] : p(X)).\nfof(f2, axiom, ! [X] : (~p(X) | q(X))).\n\
                   fof(g, conjecture, (! [X] : (q(X) => r(X))) => r(a)).";
        let p = parse_problem(src).unwrap();
        assert_eq!(p.statements.len(), 3);
        assert_eq!(p.statements[2].role, Role::Conjecture);
        let g = p.conjecture().unwrap();
        assert_eq!(g.to_string(), "! [X] : (q(X) => r(X)) => r(a)");
        assert_eq!(parse_formula(&g.to_string()).unwrap(), g);
        assert_eq!(p.axioms().to_string(), "! [X] : p(X) & ! [X] : (~p(X) | q(X))");
    }

    #[test]
    fn quantifier_lists_nest() {
        let f = parse_formula("! [X,Y] : ? [Z] : p(X,Y,Z)").unwrap();
        assert_eq!(f.to_string(), "! [X] : ! [Y] : ? [Z] : p(X,Y,Z)");
    }

    #[test]
    fn equality_literals() {
        let f = parse_formula("~ (X = Y) | f(X) = f(Y)").unwrap();
        assert_eq!(f.to_string(), "~(X = Y) | f(X) = f(Y)");
        let l = parse_literal("a != b").unwrap();
        assert!(!l.positive);
        assert_eq!(l.to_string(), "a != b");
    }

    #[test]
    fn negation_forms_roundtrip() {
        for src in ["~p(a)", "~(p(a))", "~(~p)", "~~p", "~(p & q)", "~ ! [X] : p(X)"] {
            let f = parse_formula(src).unwrap();
            let again = parse_formula(&f.to_string()).unwrap();
            assert_eq!(f, again, "{src}");
        }
    }

    #[test]
    fn reports_position() {
        let err = parse_problem("fof(a, axiom, p(X).\n").unwrap_err();
        assert_eq!((err.line, err.column), (1, 19));
        let err = parse_problem("fof(a, axiom,\n  p(X) & ).").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(parse_formula("p(").is_err());
        assert!(parse_formula("X").is_err());
    }

    #[test]
    fn clause_syntax() {
        let c = parse_clause("~p(X) | q(f(X))").unwrap();
        assert_eq!(c.len(), 2);
        assert!(parse_clause("$false").unwrap().is_empty());
        assert!(parse_clause("p & q").is_err());
        let cs = parse_clause_list("p. ~p | q.\ncnf(c, axiom, ~q).").unwrap();
        assert_eq!(cs.len(), 3);
    }

    #[test]
    fn quoted_names() {
        let t = parse_term("'Hello world'(a)").unwrap();
        assert_eq!(t.to_string(), "'Hello world'(a)");
        assert_eq!(var_display("v1"), "V1");
        assert_eq!(var_display("X_3"), "X_3");
    }
}
