//! Clause file syntax.
//!
//! ```text
//! % comment
//! c: p(X) :- q(X,Y), q(Y,X).      labelled clause
//! p(f(f(f(a)))); p(f(f(a))) :- p(a).  disjunctive head
//! p(a).                           fact
//! :- q(b).                        goal
//! []                              empty clause
//! ```
//!
//! Lowercase (or digit) identifiers are predicates, functors and constants;
//! identifiers starting with an uppercase letter or `_` are variables.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::clause::{is_skolem_name, Clause, Literal, Sign, Term, Var, SKOLEM_PREFIX};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Var(String),
    LParen,
    RParen,
    Comma,
    Semi,
    Neck,
    Colon,
    Period,
    Empty,
    Tilde,
    Hash,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut adv = 1;
        let tok = match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => None,
            '%' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            '.' => Some(Tok::Period),
            '~' => Some(Tok::Tilde),
            '#' => Some(Tok::Hash),
            ':' => {
                if chars.get(i + 1) == Some(&'-') {
                    adv = 2;
                    Some(Tok::Neck)
                } else {
                    Some(Tok::Colon)
                }
            }
            '[' => {
                if chars.get(i + 1) == Some(&']') {
                    adv = 2;
                    Some(Tok::Empty)
                } else {
                    return Err(syntax(l0, c0, "expected `[]`"));
                }
            }
            c if c.is_alphanumeric() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                adv = j - i;
                if c.is_uppercase() || c == '_' {
                    Some(Tok::Var(word))
                } else {
                    Some(Tok::Ident(word))
                }
            }
            other => return Err(syntax(l0, c0, &format!("unexpected character `{other}`"))),
        };
        if let Some(tok) = tok {
            out.push(Spanned {
                tok,
                line: l0,
                column: c0,
            });
        }
        i += adv;
        col += adv;
    }
    Ok(out)
}

fn syntax(line: usize, column: usize, message: &str) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.to_string(),
    }
}

/// One clause of a document, with its optional label and source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub label: Option<String>,
    pub clause: Clause,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClauseDocument {
    pub entries: Vec<Entry>,
}

impl ClauseDocument {
    pub fn clauses(&self) -> Vec<Clause> {
        self.entries.iter().map(|e| e.clause.clone()).collect()
    }

    pub fn get(&self, label: &str) -> Option<&Clause> {
        self.entries
            .iter()
            .find(|e| e.label.as_deref() == Some(label))
            .map(|e| &e.clause)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    eof: (usize, usize),
    arities: HashMap<(bool, String), usize>,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        let toks = lex(text)?;
        let lines = text.split('\n').count().max(1);
        let last = text.rsplit('\n').next().unwrap_or("").chars().count() + 1;
        Ok(Parser {
            toks,
            pos: 0,
            eof: (lines, last),
            arities: HashMap::new(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map_or(self.eof, |s| (s.line, s.column))
    }

    fn err(&self, msg: &str) -> Error {
        let (l, c) = self.here();
        let found = match self.peek() {
            Some(t) => format!("{msg}, found {}", describe(t)),
            None => format!("{msg}, found end of input"),
        };
        syntax(l, c, &found)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.err(&format!("expected {what}")))
        }
    }

    fn check_arity(&mut self, is_pred: bool, name: &str, n: usize) -> Result<()> {
        let (l, c) = self.here();
        match self.arities.get(&(is_pred, name.to_string())) {
            Some(&m) if m != n => Err(syntax(
                l,
                c,
                &format!(
                    "{} `{name}` used with arity {n}, earlier with arity {m}",
                    if is_pred { "predicate" } else { "functor" }
                ),
            )),
            _ => {
                self.arities.insert((is_pred, name.to_string()), n);
                Ok(())
            }
        }
    }

    fn term(&mut self) -> Result<Term> {
        let (l, c) = self.here();
        match self.peek().cloned() {
            Some(Tok::Var(v)) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::LParen) {
                    return Err(syntax(l, c, &format!("variable `{v}` cannot take arguments")));
                }
                Ok(Term::Var(Var::new(&v, 0)))
            }
            Some(Tok::Ident(f)) => {
                self.pos += 1;
                if is_skolem_name(&f) {
                    return Err(syntax(
                        l,
                        c,
                        &format!("functor `{f}` uses the reserved prefix `{SKOLEM_PREFIX}`"),
                    ));
                }
                let args = self.args()?;
                self.check_arity(false, &f, args.len())?;
                Ok(Term::app(&f, args))
            }
            _ => Err(self.err("expected a term")),
        }
    }

    fn args(&mut self) -> Result<Vec<Term>> {
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) {
            loop {
                args.push(self.term()?);
                if self.eat(&Tok::Comma) {
                    continue;
                }
                self.expect(&Tok::RParen, "`,` or `)`")?;
                break;
            }
        }
        Ok(args)
    }

    fn atom(&mut self, sign: Sign) -> Result<Literal> {
        match self.peek().cloned() {
            Some(Tok::Ident(p)) => {
                self.pos += 1;
                let args = self.args()?;
                self.check_arity(true, &p, args.len())?;
                Ok(Literal::new(sign, &p, args))
            }
            Some(Tok::Var(v)) => Err(self.err(&format!(
                "expected an atom (predicate names start lowercase, `{v}` is a variable)"
            ))),
            _ => Err(self.err("expected an atom")),
        }
    }

    fn literal(&mut self) -> Result<Literal> {
        let sign = if self.eat(&Tok::Tilde) {
            Sign::Neg
        } else {
            Sign::Pos
        };
        self.atom(sign)
    }

    fn clause(&mut self) -> Result<Clause> {
        if self.eat(&Tok::Empty) {
            self.eat(&Tok::Period);
            return Ok(Clause::empty());
        }
        let mut lits = Vec::new();
        if self.peek() != Some(&Tok::Neck) {
            loop {
                lits.push(self.atom(Sign::Pos)?);
                if !self.eat(&Tok::Semi) {
                    break;
                }
            }
        }
        if self.eat(&Tok::Neck) {
            loop {
                lits.push(self.atom(Sign::Neg)?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        self.expect(&Tok::Period, "`.` at end of clause")?;
        Ok(Clause::new(lits))
    }

    fn entry(&mut self) -> Result<Entry> {
        let (line, column) = self.here();
        let label = match (self.peek().cloned(), self.peek_at(1)) {
            (Some(Tok::Ident(s)) | Some(Tok::Var(s)), Some(Tok::Colon)) => {
                self.pos += 2;
                Some(s)
            }
            _ => None,
        };
        let clause = self.clause()?;
        Ok(Entry {
            label,
            clause,
            line,
            column,
        })
    }

    fn done(&self) -> bool {
        self.pos >= self.toks.len()
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) | Tok::Var(s) => format!("`{s}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Semi => "`;`".into(),
        Tok::Neck => "`:-`".into(),
        Tok::Colon => "`:`".into(),
        Tok::Period => "`.`".into(),
        Tok::Empty => "`[]`".into(),
        Tok::Tilde => "`~`".into(),
        Tok::Hash => "`#`".into(),
    }
}

pub fn parse_clause_file(text: &str) -> Result<ClauseDocument> {
    let mut p = Parser::new(text)?;
    let mut doc = ClauseDocument::default();
    while !p.done() {
        let e = p.entry()?;
        if let Some(l) = &e.label {
            if doc.get(l).is_some() {
                return Err(syntax(e.line, e.column, &format!("duplicate label `{l}`")));
            }
        }
        doc.entries.push(e);
    }
    Ok(doc)
}

/// Parses exactly one clause.
pub fn parse_clause(text: &str) -> Result<Clause> {
    let mut p = Parser::new(text)?;
    let e = p.entry()?;
    if !p.done() {
        return Err(p.err("expected end of input after clause"));
    }
    Ok(e.clause)
}

pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    if !p.done() {
        return Err(p.err("expected end of input after term"));
    }
    Ok(t)
}

/// Comma-separated list of terms.
pub fn parse_terms(text: &str) -> Result<Vec<Term>> {
    let mut p = Parser::new(text)?;
    let mut out = Vec::new();
    while !p.done() {
        out.push(p.term()?);
        if !p.eat(&Tok::Comma) && !p.done() {
            return Err(p.err("expected `,`"));
        }
    }
    Ok(out)
}

/// A literal, negative when prefixed by `~`.
pub fn parse_literal(text: &str) -> Result<Literal> {
    let mut p = Parser::new(text)?;
    let l = p.literal()?;
    if !p.done() {
        return Err(p.err("expected end of input after literal"));
    }
    Ok(l)
}

/// Or-introduction script: comma-separated `target#literal` steps.
pub fn parse_script(text: &str) -> Result<Vec<(usize, Literal)>> {
    let mut p = Parser::new(text)?;
    let mut out = Vec::new();
    while !p.done() {
        let (l, c) = p.here();
        let target = match p.peek().cloned() {
            Some(Tok::Ident(s)) => s
                .parse::<usize>()
                .map_err(|_| syntax(l, c, "expected a clause index before `#`"))?,
            _ => return Err(p.err("expected a clause index")),
        };
        p.pos += 1;
        p.expect(&Tok::Hash, "`#`")?;
        out.push((target, p.literal()?));
        if !p.eat(&Tok::Comma) && !p.done() {
            return Err(p.err("expected `,` between script steps"));
        }
    }
    Ok(out)
}

/// Display names for the variables of `c`, unique within the clause.
fn var_names(c: &Clause) -> BTreeMap<Var, String> {
    let mut names = BTreeMap::new();
    let mut used: Vec<String> = Vec::new();
    for v in c.vars() {
        let mut n = v.display_name();
        while used.contains(&n) {
            n.push('_');
        }
        used.push(n.clone());
        names.insert(v, n);
    }
    names
}

fn write_term(out: &mut String, t: &Term, names: &BTreeMap<Var, String>) {
    match t {
        Term::Var(v) => out.push_str(&names[v]),
        Term::App(f, args) => {
            out.push_str(f);
            write_args(out, args, names);
        }
    }
}

fn write_args(out: &mut String, args: &[Term], names: &BTreeMap<Var, String>) {
    if args.is_empty() {
        return;
    }
    out.push('(');
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_term(out, a, names);
    }
    out.push(')');
}

fn write_atom(out: &mut String, l: &Literal, names: &BTreeMap<Var, String>) {
    out.push_str(&l.pred);
    write_args(out, &l.args, names);
}

/// Canonical text: heads joined by `; `, then ` :- ` and the body.
pub fn format_clause(c: &Clause) -> String {
    if c.is_empty() {
        return "[]".to_string();
    }
    let names = var_names(c);
    let mut out = String::new();
    let heads: Vec<&Literal> = c.iter().filter(|l| l.is_positive()).collect();
    let body: Vec<&Literal> = c.iter().filter(|l| !l.is_positive()).collect();
    for (i, h) in heads.iter().enumerate() {
        if i > 0 {
            out.push_str("; ");
        }
        write_atom(&mut out, h, &names);
    }
    if !body.is_empty() {
        out.push_str(if heads.is_empty() { ":- " } else { " :- " });
        for (i, b) in body.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            write_atom(&mut out, b, &names);
        }
    }
    out.push('.');
    out
}

pub fn format_document(doc: &ClauseDocument) -> String {
    let mut out = String::new();
    for e in &doc.entries {
        if let Some(l) = &e.label {
            let _ = write!(out, "{l}: ");
        }
        out.push_str(&format_clause(&e.clause));
        out.push('\n');
    }
    out
}

pub fn format_script(steps: &[(usize, Literal)]) -> String {
    steps
        .iter()
        .map(|(t, l)| format!("{t}#{l}"))
        .collect::<Vec<_>>()
        .join(", ")
}
