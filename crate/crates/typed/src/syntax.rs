//! Concrete syntax for types and typed terms.
//!
//! ```text
//! T    ::= '*' | T '->' T | '(' T ')'
//! term ::= ident | term term | '\' ident ':' T '.' term | '(' term ')'
//! ```
//!
//! Arrows associate to the right. Free variables take their types from a
//! context supplied by the caller.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::stlc::{Context, StlcTerm, TypedVarRef};
use crate::types::{SimpleType, TypedVar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StlcParseError {
    #[error("parse error at column {column}: {msg}")]
    Syntax { column: usize, msg: String },
    #[error("unbound variable `{0}`")]
    Unbound(String),
}

pub fn parse_type(src: &str) -> Result<SimpleType, StlcParseError> {
    let mut p = Parser::new(src);
    let ty = p.ty()?;
    p.end()?;
    Ok(ty)
}

pub fn parse_stlc(src: &str, ctx: &Context) -> Result<StlcTerm, StlcParseError> {
    let mut p = Parser::new(src);
    let t = p.term(ctx)?;
    p.end()?;
    Ok(t)
}

/// Parses `x:T,f:T,...`; an empty string is the empty context.
pub fn parse_context(src: &str) -> Result<Context, StlcParseError> {
    let mut ctx = Context::new();
    for entry in src.split(',').filter(|e| !e.trim().is_empty()) {
        let (name, ty) = entry
            .split_once(':')
            .ok_or_else(|| StlcParseError::Syntax {
                column: 1,
                msg: format!("expected `name:type` in `{entry}`"),
            })?;
        let name = name.trim();
        if !linmod_core::is_identifier(name) {
            return Err(StlcParseError::Syntax {
                column: 1,
                msg: format!("`{name}` is not an identifier"),
            });
        }
        ctx.insert(linmod_core::Name::new(name), parse_type(ty)?);
    }
    Ok(ctx)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    binders: Vec<String>,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            binders: Vec::new(),
        }
    }

    fn error(&self, msg: &str) -> StlcParseError {
        StlcParseError::Syntax {
            column: self.pos + 1,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        let n = s.chars().count();
        if self.chars[self.pos..].iter().take(n).copied().eq(s.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn end(&mut self) -> Result<(), StlcParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error("unexpected input after term")),
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        if !self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphabetic() || *c == '_')
        {
            return None;
        }
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_' || *c == '\'')
        {
            self.pos += 1;
        }
        Some(self.chars[start..self.pos].iter().collect())
    }

    fn ty(&mut self) -> Result<SimpleType, StlcParseError> {
        let dom = if self.eat("*") {
            SimpleType::Base
        } else if self.eat("(") {
            let t = self.ty()?;
            if !self.eat(")") {
                return Err(self.error("expected `)`"));
            }
            t
        } else {
            return Err(self.error("expected a type"));
        };
        if self.eat("->") {
            Ok(SimpleType::arrow(dom, self.ty()?))
        } else {
            Ok(dom)
        }
    }

    fn term(&mut self, ctx: &Context) -> Result<StlcTerm, StlcParseError> {
        let mut head: Option<StlcTerm> = None;
        loop {
            let arg = match self.peek() {
                Some('\\') | Some('λ') => Some(self.lambda(ctx)?),
                Some('(') => {
                    self.pos += 1;
                    let t = self.term(ctx)?;
                    if !self.eat(")") {
                        return Err(self.error("expected `)`"));
                    }
                    Some(t)
                }
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    let name = self.ident().unwrap();
                    Some(self.resolve(&name, ctx)?)
                }
                _ => None,
            };
            match (arg, head.take()) {
                (Some(a), None) => head = Some(a),
                (Some(a), Some(h)) => head = Some(StlcTerm::app(h, a)),
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

    fn lambda(&mut self, ctx: &Context) -> Result<StlcTerm, StlcParseError> {
        self.pos += 1;
        let name = self
            .ident()
            .ok_or_else(|| self.error("expected binder name"))?;
        if !self.eat(":") {
            return Err(self.error("expected `:` after binder"));
        }
        let ty = self.ty()?;
        if !self.eat(".") {
            return Err(self.error("expected `.` after binder type"));
        }
        self.binders.push(name);
        let body = self.term(ctx);
        self.binders.pop();
        Ok(StlcTerm::abs(ty, body?))
    }

    fn resolve(&self, name: &str, ctx: &Context) -> Result<StlcTerm, StlcParseError> {
        if let Some(i) = self.binders.iter().rev().position(|b| b == name) {
            return Ok(StlcTerm::bound(i as u32));
        }
        let n = linmod_core::Name::new(name);
        match ctx.get(&n) {
            Some(ty) => Ok(StlcTerm::free(TypedVar {
                name: n,
                ty: ty.clone(),
            })),
            None => Err(StlcParseError::Unbound(name.to_string())),
        }
    }
}

impl fmt::Display for StlcTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut avoid = BTreeSet::new();
        collect_free(self, &mut avoid);
        let mut p = Printer {
            avoid,
            scope: Vec::new(),
            next: 0,
            out: String::new(),
        };
        p.term(self);
        f.write_str(&p.out)
    }
}

fn collect_free(t: &StlcTerm, out: &mut BTreeSet<String>) {
    match t {
        StlcTerm::Var(TypedVarRef::Free(v)) => {
            out.insert(v.name.to_string());
        }
        StlcTerm::Var(_) => {}
        StlcTerm::App(f, a) => {
            collect_free(f, out);
            collect_free(a, out);
        }
        StlcTerm::Abs(_, b) => collect_free(b, out),
    }
}

struct Printer {
    avoid: BTreeSet<String>,
    scope: Vec<String>,
    next: usize,
    out: String,
}

impl Printer {
    fn term(&mut self, t: &StlcTerm) {
        match t {
            StlcTerm::Var(TypedVarRef::Free(v)) => self.out.push_str(&v.name.to_string()),
            StlcTerm::Var(TypedVarRef::Bound(i)) => {
                match self.scope.len().checked_sub(1 + *i as usize) {
                    Some(k) => {
                        let name = self.scope[k].clone();
                        self.out.push_str(&name);
                    }
                    None => self.out.push_str(&format!("#{i}")),
                }
            }
            StlcTerm::Abs(ty, body) => {
                let saved = self.next;
                let mut name = format!("v{}", self.next);
                self.next += 1;
                while self.avoid.contains(&name) {
                    name = format!("v{}", self.next);
                    self.next += 1;
                }
                self.out.push_str(&format!("\\{name}:{ty}. "));
                self.scope.push(name);
                self.term(body);
                self.scope.pop();
                self.next = saved;
            }
            StlcTerm::App(fun, arg) => {
                self.wrapped(fun, matches!(**fun, StlcTerm::Abs(..)));
                self.out.push(' ');
                self.wrapped(arg, !matches!(**arg, StlcTerm::Var(_)));
            }
        }
    }

    fn wrapped(&mut self, t: &StlcTerm, parens: bool) {
        if parens {
            self.out.push('(');
        }
        self.term(t);
        if parens {
            self.out.push(')');
        }
    }
}
