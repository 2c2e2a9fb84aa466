//! Concrete syntax.
//!
//! ```text
//! term ::= ident | term term | '\' ident '.' term | '(' term ')'
//! ```
//!
//! Application is left-associative and an abstraction extends as far right
//! as possible; `λ` is accepted for `\`. The printer picks binder names
//! `v0, v1, ..` that avoid the term's free names.

use std::collections::BTreeSet;
use std::fmt;

use linmod_core::{Name, VarRef};
use thiserror::Error;

use crate::term::LcTerm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {line}:{column}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub msg: String,
}

pub fn parse_term(src: &str) -> Result<LcTerm, ParseError> {
    let mut p = Parser {
        src,
        pos: 0,
        binders: Vec::new(),
    };
    let t = p.term()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.error("unexpected input after term"));
    }
    Ok(t)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    binders: Vec<String>,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ParseError {
        let before = &self.src[..self.pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ParseError {
            line,
            column,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn ident(&mut self) -> Option<String> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.pos += 1,
            _ => return None,
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Some(self.src[start..self.pos].to_string())
    }

    fn term(&mut self) -> Result<LcTerm, ParseError> {
        let mut head: Option<LcTerm> = None;
        loop {
            self.skip_ws();
            let arg = match self.peek() {
                Some('\\') | Some('λ') => Some(self.lambda()?),
                Some('(') => {
                    self.pos += 1;
                    let inner = self.term()?;
                    self.skip_ws();
                    if self.peek() != Some(')') {
                        return Err(self.error("expected `)`"));
                    }
                    self.pos += 1;
                    Some(inner)
                }
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    let name = self.ident().unwrap();
                    Some(self.resolve(&name))
                }
                _ => None,
            };
            match (arg, head.take()) {
                (Some(a), None) => head = Some(a),
                (Some(a), Some(h)) => head = Some(LcTerm::app(h, a)),
                (None, Some(h)) => return Ok(h),
                (None, None) => {
                    return Err(match self.peek() {
                        None => self.error("unexpected end of input"),
                        Some(c) => self.error(&format!("unexpected `{c}`")),
                    })
                }
            }
        }
    }

    fn lambda(&mut self) -> Result<LcTerm, ParseError> {
        let c = self.peek().unwrap();
        self.pos += c.len_utf8();
        self.skip_ws();
        let name = self
            .ident()
            .ok_or_else(|| self.error("expected binder name"))?;
        self.skip_ws();
        if self.peek() != Some('.') {
            return Err(self.error("expected `.` after binder"));
        }
        self.pos += 1;
        self.binders.push(name);
        let body = self.term();
        self.binders.pop();
        Ok(LcTerm::abs(body?))
    }

    fn resolve(&self, name: &str) -> LcTerm {
        match self.binders.iter().rev().position(|b| b == name) {
            Some(i) => LcTerm::bound(i as u32),
            None => LcTerm::free(name),
        }
    }
}

/// Named printing; this is also the `Display` of [`LcTerm`].
pub struct Named<'a>(pub &'a LcTerm);

/// Print mode with de Bruijn indices: `λ. 0 y`.
pub struct DeBruijn<'a>(pub &'a LcTerm);

impl LcTerm {
    pub fn debruijn(&self) -> DeBruijn<'_> {
        DeBruijn(self)
    }
}

impl fmt::Display for LcTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Named(self).fmt(f)
    }
}

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let avoid: BTreeSet<String> = self.0.free_names().iter().map(Name::to_string).collect();
        let mut printer = NamedPrinter {
            avoid,
            scope: Vec::new(),
            next: 0,
        };
        let mut out = String::new();
        printer.term(self.0, &mut out);
        f.write_str(&out)
    }
}

struct NamedPrinter {
    avoid: BTreeSet<String>,
    scope: Vec<String>,
    next: usize,
}

impl NamedPrinter {
    fn var(&self, v: &VarRef, out: &mut String) {
        match v {
            VarRef::Free(n) => out.push_str(&n.to_string()),
            VarRef::Bound(i) => match self.scope.len().checked_sub(1 + *i as usize) {
                Some(k) => out.push_str(&self.scope[k]),
                None => out.push_str(&format!("#{i}")),
            },
        }
    }

    fn term(&mut self, t: &LcTerm, out: &mut String) {
        match t {
            LcTerm::Var(v) => self.var(v, out),
            LcTerm::Abs(body) => {
                let saved = self.next;
                let mut name = format!("v{}", self.next);
                self.next += 1;
                while self.avoid.contains(&name) {
                    name = format!("v{}", self.next);
                    self.next += 1;
                }
                out.push('\\');
                out.push_str(&name);
                out.push_str(". ");
                self.scope.push(name);
                self.term(body, out);
                self.scope.pop();
                self.next = saved;
            }
            LcTerm::App(fun, arg) => {
                if matches!(**fun, LcTerm::Abs(_)) {
                    out.push('(');
                    self.term(fun, out);
                    out.push(')');
                } else {
                    self.term(fun, out);
                }
                out.push(' ');
                if matches!(**arg, LcTerm::Var(_)) {
                    self.term(arg, out);
                } else {
                    out.push('(');
                    self.term(arg, out);
                    out.push(')');
                }
            }
        }
    }
}

impl fmt::Display for DeBruijn<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            LcTerm::Var(VarRef::Free(n)) => write!(f, "{n}"),
            LcTerm::Var(VarRef::Bound(i)) => write!(f, "{i}"),
            LcTerm::Abs(b) => write!(f, "λ. {}", b.debruijn()),
            LcTerm::App(fun, arg) => {
                if matches!(**fun, LcTerm::Abs(_)) {
                    write!(f, "({})", fun.debruijn())?;
                } else {
                    write!(f, "{}", fun.debruijn())?;
                }
                if matches!(**arg, LcTerm::Var(_)) {
                    write!(f, " {}", arg.debruijn())
                } else {
                    write!(f, " ({})", arg.debruijn())
                }
            }
        }
    }
}
