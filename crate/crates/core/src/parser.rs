//! Text format for propositional disjunctive programs.
//!
//! ```text
//! program := { rule }
//! rule    := head [ ":-" body ] "."
//! head    := "" | atom { ";" atom }
//! body    := lit { "," lit }
//! lit     := atom | "not" atom | "not" "not" atom
//! atom    := [a-zA-Z_][a-zA-Z0-9_]*
//! ```
//!
//! `%` starts a comment that runs to the end of the line. An empty body after
//! `:-` is accepted, so `p ; q :- .` and `p ; q.` are the same fact.

use std::fmt::Write as _;

use crate::atoms::{AtomSet, AtomTable};
use crate::error::{Error, Result};
use crate::program::{Program, Rule};

/// Program text together with where it came from, for diagnostics.
#[derive(Clone, Debug)]
pub struct SourceProgram<'a> {
    pub text: &'a str,
    pub origin: &'a str,
}

impl<'a> SourceProgram<'a> {
    pub fn new(text: &'a str, origin: &'a str) -> Self {
        Self { text, origin }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Ident(&'a str),
    Not,
    If,
    Semi,
    Comma,
    Dot,
}

impl Tok<'_> {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("atom `{s}`"),
            Tok::Not => "`not`".into(),
            Tok::If => "`:-`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

struct Lexer<'a> {
    src: &'a str,
    origin: &'a str,
    offset: usize,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &SourceProgram<'a>) -> Self {
        Self {
            src: src.text,
            origin: src.origin,
            offset: 0,
            line: 1,
            column: 1,
        }
    }

    fn error(&self, pos: Pos, message: impl Into<String>) -> Error {
        Error::Syntax {
            origin: self.origin.to_owned(),
            line: pos.line,
            column: pos.column,
            message: message.into(),
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            column: self.column,
        }
    }

    fn peek_char(&self) -> Option<char> {
        self.src[self.offset..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek_char()?;
        self.offset += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek_char() {
            if c == '%' {
                while let Some(c) = self.peek_char() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn next(&mut self) -> Result<Option<(Tok<'a>, Pos)>> {
        self.skip_trivia();
        let pos = self.pos();
        let Some(c) = self.bump() else {
            return Ok(None);
        };
        let tok = match c {
            ';' => Tok::Semi,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            ':' => {
                if self.peek_char() == Some('-') {
                    self.bump();
                    Tok::If
                } else {
                    return Err(self.error(pos, "expected `:-`"));
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.offset - 1;
                while matches!(self.peek_char(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                    self.bump();
                }
                match &self.src[start..self.offset] {
                    "not" => Tok::Not,
                    ident => Tok::Ident(ident),
                }
            }
            c => return Err(self.error(pos, format!("unexpected character `{c}`"))),
        };
        Ok(Some((tok, pos)))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: Option<Option<(Tok<'a>, Pos)>>,
    table: AtomTable,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Result<Option<&(Tok<'a>, Pos)>> {
        if self.peeked.is_none() {
            self.peeked = Some(self.lexer.next()?);
        }
        Ok(self.peeked.as_ref().unwrap().as_ref())
    }

    fn next(&mut self) -> Result<Option<(Tok<'a>, Pos)>> {
        match self.peeked.take() {
            Some(t) => Ok(t),
            None => self.lexer.next(),
        }
    }

    fn unexpected(&self, got: Option<(Tok<'a>, Pos)>, expected: &str) -> Error {
        match got {
            Some((tok, pos)) => self.lexer.error(
                pos,
                format!("expected {expected}, found {}", tok.describe()),
            ),
            None => self.lexer.error(
                self.lexer.pos(),
                format!("expected {expected}, found end of input"),
            ),
        }
    }

    fn atom(&mut self, expected: &str) -> Result<crate::atoms::Atom> {
        match self.next()? {
            Some((Tok::Ident(name), _)) => Ok(self.table.intern(name)),
            other => Err(self.unexpected(other, expected)),
        }
    }

    fn rule(&mut self) -> Result<Rule> {
        let mut rule = Rule::default();

        if let Some((Tok::Ident(_), _)) = self.peek()? {
            let a = self.atom("an atom")?;
            rule.head.insert(a);
            while let Some((Tok::Semi, _)) = self.peek()? {
                self.next()?;
                let a = self.atom("an atom after `;`")?;
                rule.head.insert(a);
            }
        }

        match self.next()? {
            Some((Tok::Dot, _)) => return Ok(rule),
            Some((Tok::If, _)) => {}
            other => return Err(self.unexpected(other, "`;`, `:-` or `.`")),
        }

        if let Some((Tok::Dot, _)) = self.peek()? {
            self.next()?;
            return Ok(rule);
        }
        loop {
            self.literal(&mut rule)?;
            match self.next()? {
                Some((Tok::Comma, _)) => continue,
                Some((Tok::Dot, _)) => return Ok(rule),
                other => return Err(self.unexpected(other, "`,` or `.`")),
            }
        }
    }

    fn literal(&mut self, rule: &mut Rule) -> Result<()> {
        let mut nots = 0;
        while let Some((Tok::Not, _)) = self.peek()? {
            let (_, pos) = self.next()?.unwrap();
            nots += 1;
            if nots > 2 {
                return Err(self
                    .lexer
                    .error(pos, "at most two `not` may precede an atom"));
            }
        }
        let a = self.atom("an atom")?;
        match nots {
            0 => rule.pos.insert(a),
            1 => rule.neg.insert(a),
            _ => rule.dneg.insert(a),
        };
        Ok(())
    }
}

/// Parse a program. Rules keep their source order, duplicates included.
pub fn parse_program(src: &SourceProgram<'_>) -> Result<Program> {
    let mut parser = Parser {
        lexer: Lexer::new(src),
        peeked: None,
        table: AtomTable::new(),
    };
    let mut rules = Vec::new();
    while parser.peek()?.is_some() {
        rules.push(parser.rule()?);
    }
    Ok(Program::new(parser.table, rules))
}

/// Shorthand for [`parse_program`] on in-memory text.
pub fn parse_str(text: &str) -> Result<Program> {
    parse_program(&SourceProgram::new(text, "<string>"))
}

fn write_set(
    out: &mut String,
    set: &AtomSet,
    table: &AtomTable,
    prefix: &str,
    sep: &str,
    first: &mut bool,
) {
    for a in set {
        if !*first {
            out.push_str(sep);
        }
        *first = false;
        out.push_str(prefix);
        out.push_str(table.name(a));
    }
}

/// Render one rule in canonical form, without a trailing newline.
pub fn render_rule(rule: &Rule, table: &AtomTable) -> String {
    let mut out = String::new();
    let mut first = true;
    write_set(&mut out, &rule.head, table, "", " ; ", &mut first);
    let has_body = !(rule.pos.is_empty() && rule.neg.is_empty() && rule.dneg.is_empty());
    if has_body || rule.head.is_empty() {
        if !rule.head.is_empty() {
            out.push(' ');
        }
        out.push_str(":-");
        let mut first = true;
        let mut body = String::new();
        write_set(&mut body, &rule.pos, table, "", ", ", &mut first);
        write_set(&mut body, &rule.neg, table, "not ", ", ", &mut first);
        write_set(&mut body, &rule.dneg, table, "not not ", ", ", &mut first);
        if !body.is_empty() {
            out.push(' ');
            out.push_str(&body);
        } else {
            out.push(' ');
        }
    }
    out.push('.');
    out
}

/// Canonical text: one rule per line, each line newline-terminated.
pub fn render_program(p: &Program) -> String {
    let mut out = String::new();
    for r in p.rules() {
        let _ = writeln!(out, "{}", render_rule(r, p.table()));
    }
    out
}
