//! The free monad on two binary operations `+` and `*`, and the
//! transformation `n` that swaps them while doubling variables. `n` is
//! natural but not linear.

use std::fmt;

use linmod_core::gen::pick;
use linmod_core::{LawReport, LinearityCheck, ModuleInstance, MonadInstance, Name, Rng, Subst};
use rand::Rng as _;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PtTerm {
    Var(Name),
    Plus(Box<PtTerm>, Box<PtTerm>),
    Times(Box<PtTerm>, Box<PtTerm>),
}

impl PtTerm {
    pub fn var(name: &str) -> Self {
        PtTerm::Var(Name::new(name))
    }

    pub fn plus(a: PtTerm, b: PtTerm) -> Self {
        PtTerm::Plus(Box::new(a), Box::new(b))
    }

    pub fn times(a: PtTerm, b: PtTerm) -> Self {
        PtTerm::Times(Box::new(a), Box::new(b))
    }

    pub fn size(&self) -> usize {
        match self {
            PtTerm::Var(_) => 1,
            PtTerm::Plus(a, b) | PtTerm::Times(a, b) => 1 + a.size() + b.size(),
        }
    }
}

pub fn pt_bind(s: &Subst<Name, PtTerm>, t: &PtTerm) -> PtTerm {
    match t {
        PtTerm::Var(v) => s.get(v).cloned().unwrap_or_else(|| t.clone()),
        PtTerm::Plus(a, b) => PtTerm::plus(pt_bind(s, a), pt_bind(s, b)),
        PtTerm::Times(a, b) => PtTerm::times(pt_bind(s, a), pt_bind(s, b)),
    }
}

/// `n(x) = x+x`, `n(a+b) = n(a)*n(b)`, `n(a*b) = n(a)+n(b)`.
pub fn n_transform(t: &PtTerm) -> PtTerm {
    match t {
        PtTerm::Var(_) => PtTerm::plus(t.clone(), t.clone()),
        PtTerm::Plus(a, b) => PtTerm::times(n_transform(a), n_transform(b)),
        PtTerm::Times(a, b) => PtTerm::plus(n_transform(a), n_transform(b)),
    }
}

const PLUS: u8 = 1;
const TIMES: u8 = 2;

fn write_at(t: &PtTerm, prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let (op, mine, a, b) = match t {
        PtTerm::Var(v) => return write!(f, "{v}"),
        PtTerm::Plus(a, b) => ('+', PLUS, a, b),
        PtTerm::Times(a, b) => ('*', TIMES, a, b),
    };
    if mine < prec {
        f.write_str("(")?;
    }
    write_at(a, mine, f)?;
    write!(f, "{op}")?;
    write_at(b, mine + 1, f)?;
    if mine < prec {
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for PtTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(self, 0, f)
    }
}

/// Renders an element of `M(M X)`: `t` with each variable `v` shown as
/// `var(s v)`.
pub fn show_nested(s: &Subst<Name, PtTerm>, t: &PtTerm) -> String {
    let outer = pt_bind(
        &t_vars(t)
            .into_iter()
            .map(|v| {
                let image = s.get(&v).cloned().unwrap_or_else(|| PtTerm::Var(v.clone()));
                (v, PtTerm::Var(Name::new(&format!("var({image})"))))
            })
            .collect(),
        t,
    );
    outer.to_string()
}

fn t_vars(t: &PtTerm) -> Vec<Name> {
    match t {
        PtTerm::Var(v) => vec![v.clone()],
        PtTerm::Plus(a, b) | PtTerm::Times(a, b) => {
            let mut out = t_vars(a);
            out.extend(t_vars(b));
            out.sort();
            out.dedup();
            out
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {column}: {msg}")]
pub struct PtParseError {
    pub column: usize,
    pub msg: String,
}

/// `t ::= ident | t '+' t | t '*' t | '(' t ')'`; `*` binds tighter, both
/// associate to the left.
pub fn parse_pt(src: &str) -> Result<PtTerm, PtParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut p = PtParser { chars, pos: 0 };
    let t = p.sum()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected input after term"));
    }
    Ok(t)
}

struct PtParser {
    chars: Vec<char>,
    pos: usize,
}

impl PtParser {
    fn error(&self, msg: &str) -> PtParseError {
        PtParseError {
            column: self.pos + 1,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<PtTerm, PtParseError> {
        let mut t = self.product()?;
        while self.eat('+') {
            t = PtTerm::plus(t, self.product()?);
        }
        Ok(t)
    }

    fn product(&mut self) -> Result<PtTerm, PtParseError> {
        let mut t = self.atom()?;
        while self.eat('*') {
            t = PtTerm::times(t, self.atom()?);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<PtTerm, PtParseError> {
        if self.eat('(') {
            let t = self.sum()?;
            if !self.eat(')') {
                return Err(self.error("expected `)`"));
            }
            return Ok(t);
        }
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_' || *c == '\'')
        {
            self.pos += 1;
        }
        let ident: String = self.chars[start..self.pos].iter().collect();
        if !linmod_core::is_identifier(&ident) {
            self.pos = start;
            return Err(self.error("expected identifier or `(`"));
        }
        Ok(PtTerm::var(&ident))
    }
}

pub const PT_POOL: [&str; 3] = ["x", "y", "z"];

pub fn gen_pt(rng: &mut Rng, pool: &[Name], size: usize) -> PtTerm {
    if size < 3 {
        return PtTerm::Var(pick(rng, pool).cloned().unwrap_or_else(|| Name::new("x")));
    }
    let l = rng.gen_range(1..=size - 2);
    let (a, b) = (gen_pt(rng, pool, l), gen_pt(rng, pool, size - 1 - l));
    if rng.gen_bool(0.5) {
        PtTerm::plus(a, b)
    } else {
        PtTerm::times(a, b)
    }
}

pub fn pt_monad() -> MonadInstance<Name, PtTerm> {
    MonadInstance::new(
        "pt",
        PT_POOL.iter().map(|s| Name::new(s)).collect(),
        |v: &Name| PtTerm::Var(v.clone()),
        |s, t| Ok(pt_bind(s, t)),
        gen_pt,
    )
    .with_show(|t: &PtTerm| t.to_string())
    .with_max_size(9)
}

/// Tests `n` for linearity over the tautological module, probing first
/// with `x := x*x` at `x`.
pub fn check_n_linearity(samples: usize, seed: u64) -> LawReport {
    let module = ModuleInstance::tautological(&pt_monad());
    let x = PtTerm::var("x");
    let probe = Subst::singleton(Name::new("x"), PtTerm::times(x.clone(), x.clone()));
    let check = LinearityCheck::new("linearity", &module, &module, |t: &PtTerm| {
        Ok(n_transform(t))
    })
    .probe(probe, x)
    .render_input(show_nested);
    check.run(samples, seed).named("n on pt")
}
