//! Signature-generic terms with nameless bound variables.
//!
//! An operator with arity `[a_1, .., a_r]` takes `r` arguments; argument `j`
//! sits under `a_j` extra bound slots, so it is a value of the `a_j`-th
//! derivative. Bound indices count slots from the innermost one outwards.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng as _;
use thiserror::Error;

use crate::gen::{pick, Rng};
use crate::instance::{BindError, MonadInstance};
use crate::name::{is_identifier, Name, VarRef};
use crate::signature::Signature;
use crate::subst::Subst;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ScopedTerm {
    Var(VarRef),
    Op(usize, Vec<ScopedTerm>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("operator index {0} is outside the signature")]
    UnknownOpIndex(usize),
    #[error("unknown operator `{0}`")]
    UnknownOp(String),
    #[error("operator `{op}` expects {expected} arguments, found {found}")]
    ArgCount {
        op: String,
        expected: usize,
        found: usize,
    },
    #[error("bound index #{index} escapes its scope (depth {depth})")]
    Unbound { index: u32, depth: u32 },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl ScopedTerm {
    pub fn free(name: &str) -> Self {
        ScopedTerm::Var(VarRef::free(name))
    }

    pub fn bound(index: u32) -> Self {
        ScopedTerm::Var(VarRef::Bound(index))
    }

    pub fn var(name: Name) -> Self {
        ScopedTerm::Var(VarRef::Free(name))
    }

    /// Checks operator indices, argument counts and well-scopedness at the
    /// given binder depth.
    pub fn check(&self, sig: &Signature, depth: u32) -> Result<(), TermError> {
        match self {
            ScopedTerm::Var(VarRef::Free(_)) => Ok(()),
            ScopedTerm::Var(VarRef::Bound(i)) => {
                if *i < depth {
                    Ok(())
                } else {
                    Err(TermError::Unbound { index: *i, depth })
                }
            }
            ScopedTerm::Op(op, args) => {
                let binders = binders_of(sig, *op, args.len())?;
                args.iter()
                    .zip(binders)
                    .try_for_each(|(a, b)| a.check(sig, depth + b))
            }
        }
    }

    pub fn free_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<Name>) {
        match self {
            ScopedTerm::Var(VarRef::Free(n)) => {
                out.insert(n.clone());
            }
            ScopedTerm::Var(VarRef::Bound(_)) => {}
            ScopedTerm::Op(_, args) => args.iter().for_each(|a| a.collect_free(out)),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            ScopedTerm::Var(_) => 1,
            ScopedTerm::Op(_, args) => 1 + args.iter().map(ScopedTerm::size).sum::<usize>(),
        }
    }

    /// Increments bound indices `>= cutoff` by `amount`.
    pub fn shift(
        &self,
        sig: &Signature,
        amount: u32,
        cutoff: u32,
    ) -> Result<ScopedTerm, TermError> {
        if amount == 0 {
            return Ok(self.clone());
        }
        match self {
            ScopedTerm::Var(VarRef::Bound(i)) if *i >= cutoff => Ok(ScopedTerm::bound(i + amount)),
            ScopedTerm::Var(_) => Ok(self.clone()),
            ScopedTerm::Op(op, args) => {
                let binders = binders_of(sig, *op, args.len())?;
                let args = args
                    .iter()
                    .zip(binders)
                    .map(|(a, b)| a.shift(sig, amount, cutoff + b))
                    .collect::<Result<_, _>>()?;
                Ok(ScopedTerm::Op(*op, args))
            }
        }
    }

    /// Binds the given free markers: `markers[k]` becomes the `k`-th of
    /// `markers.len()` fresh slots, the last marker being the innermost.
    pub fn close(&self, sig: &Signature, markers: &[Name]) -> Result<ScopedTerm, TermError> {
        self.close_at(sig, markers, 0)
    }

    fn close_at(
        &self,
        sig: &Signature,
        markers: &[Name],
        depth: u32,
    ) -> Result<ScopedTerm, TermError> {
        match self {
            ScopedTerm::Var(VarRef::Free(n)) => match markers.iter().position(|m| m == n) {
                Some(k) => Ok(ScopedTerm::bound(depth + (markers.len() - 1 - k) as u32)),
                None => Ok(self.clone()),
            },
            ScopedTerm::Var(VarRef::Bound(i)) => {
                if *i >= depth {
                    Ok(ScopedTerm::bound(i + markers.len() as u32))
                } else {
                    Ok(self.clone())
                }
            }
            ScopedTerm::Op(op, args) => {
                let binders = binders_of(sig, *op, args.len())?;
                let args = args
                    .iter()
                    .zip(binders)
                    .map(|(a, b)| a.close_at(sig, markers, depth + b))
                    .collect::<Result<_, _>>()?;
                Ok(ScopedTerm::Op(*op, args))
            }
        }
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> SexprDisplay<'a> {
        SexprDisplay { term: self, sig }
    }
}

fn binders_of(sig: &Signature, op: usize, found: usize) -> Result<&[u32], TermError> {
    let (name, arity) = sig.op(op).ok_or(TermError::UnknownOpIndex(op))?;
    if arity.len() != found {
        return Err(TermError::ArgCount {
            op: name.to_string(),
            expected: arity.len(),
            found,
        });
    }
    Ok(arity.binders())
}

/// Functorial action on free names; bound indices are untouched.
pub fn gen_rename(renaming: &dyn Fn(&Name) -> Name, t: &ScopedTerm) -> ScopedTerm {
    match t {
        ScopedTerm::Var(VarRef::Free(n)) => ScopedTerm::var(renaming(n)),
        ScopedTerm::Var(VarRef::Bound(_)) => t.clone(),
        ScopedTerm::Op(op, args) => {
            ScopedTerm::Op(*op, args.iter().map(|a| gen_rename(renaming, a)).collect())
        }
    }
}

/// Simultaneous capture-avoiding substitution of free names.
///
/// Images are placed under the binder slots crossed on the way down and are
/// shifted accordingly; closed images come out unchanged.
pub fn gen_subst(
    sig: &Signature,
    s: &Subst<Name, ScopedTerm>,
    t: &ScopedTerm,
) -> Result<ScopedTerm, TermError> {
    subst_at(sig, s, t, 0)
}

fn subst_at(
    sig: &Signature,
    s: &Subst<Name, ScopedTerm>,
    t: &ScopedTerm,
    depth: u32,
) -> Result<ScopedTerm, TermError> {
    match t {
        ScopedTerm::Var(VarRef::Free(n)) => match s.get(n) {
            Some(img) => img.shift(sig, depth, 0),
            None => Ok(t.clone()),
        },
        ScopedTerm::Var(VarRef::Bound(_)) => Ok(t.clone()),
        ScopedTerm::Op(op, args) => {
            let binders = binders_of(sig, *op, args.len())?;
            let args = args
                .iter()
                .zip(binders)
                .map(|(a, b)| subst_at(sig, s, a, depth + b))
                .collect::<Result<_, _>>()?;
            Ok(ScopedTerm::Op(*op, args))
        }
    }
}

/// Random well-scoped term at the given depth.
pub fn gen_scoped(
    rng: &mut Rng,
    sig: &Signature,
    pool: &[Name],
    depth: u32,
    size: usize,
) -> ScopedTerm {
    let leaf = size <= 1 || sig.is_empty() || rng.gen_bool(0.15);
    if leaf {
        let constants: Vec<usize> = (0..sig.len())
            .filter(|i| sig.arity(*i).is_some_and(|a| a.is_empty()))
            .collect();
        if !constants.is_empty() && rng.gen_bool(0.2) {
            return ScopedTerm::Op(*pick(rng, &constants).unwrap(), Vec::new());
        }
        if depth > 0 && (pool.is_empty() || rng.gen_bool(0.5)) {
            return ScopedTerm::bound(rng.gen_range(0..depth));
        }
        return match pick(rng, pool) {
            Some(n) => ScopedTerm::var(n.clone()),
            None => ScopedTerm::free("x"),
        };
    }
    let op = rng.gen_range(0..sig.len());
    let binders = sig.arity(op).unwrap().binders().to_vec();
    let n = binders.len().max(1);
    let budget = (size - 1) / n;
    let args = binders
        .iter()
        .map(|b| {
            let s = if budget == 0 {
                0
            } else {
                rng.gen_range(budget / 2..=budget)
            };
            gen_scoped(rng, sig, pool, depth + b, s)
        })
        .collect();
    ScopedTerm::Op(op, args)
}

/// Terms over `sig` as a monad: variables are the unit, [`gen_subst`] the
/// bind.
pub fn scoped_monad(sig: &Signature, pool: Vec<Name>) -> MonadInstance<Name, ScopedTerm> {
    let bind_sig = sig.clone();
    let gen_sig = sig.clone();
    let show_sig = sig.clone();
    MonadInstance::new(
        "scoped",
        pool,
        |n| ScopedTerm::var(n.clone()),
        move |s, t| gen_subst(&bind_sig, s, t).map_err(|e| BindError::Rejected(e.to_string())),
        move |rng, pool, size| gen_scoped(rng, &gen_sig, pool, 0, size),
    )
    .with_show(move |t| t.display(&show_sig).to_string())
}

pub struct SexprDisplay<'a> {
    term: &'a ScopedTerm,
    sig: &'a Signature,
}

impl fmt::Display for SexprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.term {
            ScopedTerm::Var(VarRef::Free(n)) => write!(f, "{n}"),
            ScopedTerm::Var(VarRef::Bound(i)) => write!(f, "#{i}"),
            ScopedTerm::Op(op, args) => {
                match self.sig.op(*op) {
                    Some((name, _)) => write!(f, "({name}")?,
                    None => write!(f, "(?{op}")?,
                }
                for a in args {
                    write!(f, " {}", a.display(self.sig))?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Parses `(op arg ..)`, `#k` and identifiers, checking arities and scope.
pub fn parse_sexpr(sig: &Signature, src: &str) -> Result<ScopedTerm, TermError> {
    let mut p = SexprParser { src, pos: 0 };
    let t = p.term(sig, 0)?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(t)
}

struct SexprParser<'a> {
    src: &'a str,
    pos: usize,
}

impl SexprParser<'_> {
    fn error(&self, msg: &str) -> TermError {
        TermError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn atom(&mut self) -> &str {
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() || c == '(' || c == ')' {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn term(&mut self, sig: &Signature, depth: u32) -> Result<ScopedTerm, TermError> {
        self.skip_ws();
        let start = self.pos;
        match self.src[self.pos..].chars().next() {
            None => Err(self.error("unexpected end of input")),
            Some(')') => Err(self.error("unexpected `)`")),
            Some('(') => {
                self.pos += 1;
                self.skip_ws();
                let name = self.atom().to_string();
                let op = sig.index_of(&name).ok_or_else(|| TermError::Parse {
                    pos: start + 1,
                    msg: format!("unknown operator `{name}`"),
                })?;
                let binders = sig.arity(op).unwrap().binders().to_vec();
                let mut args = Vec::with_capacity(binders.len());
                for b in &binders {
                    self.skip_ws();
                    if self.src[self.pos..].starts_with(')') {
                        return Err(self.error(&format!(
                            "operator `{name}` expects {} arguments, found {}",
                            binders.len(),
                            args.len()
                        )));
                    }
                    args.push(self.term(sig, depth + b)?);
                }
                self.skip_ws();
                if !self.src[self.pos..].starts_with(')') {
                    return Err(self.error(&format!(
                        "operator `{name}` expects {} arguments",
                        binders.len()
                    )));
                }
                self.pos += 1;
                Ok(ScopedTerm::Op(op, args))
            }
            Some(_) => {
                let text = self.atom().to_string();
                if let Some(digits) = text.strip_prefix('#') {
                    let index: u32 = digits.parse().map_err(|_| TermError::Parse {
                        pos: start,
                        msg: format!("bad bound variable `{text}`"),
                    })?;
                    if index >= depth {
                        return Err(TermError::Parse {
                            pos: start,
                            msg: format!("bound variable #{index} escapes its scope"),
                        });
                    }
                    Ok(ScopedTerm::bound(index))
                } else if is_identifier(&text) {
                    Ok(ScopedTerm::free(&text))
                } else {
                    Err(TermError::Parse {
                        pos: start,
                        msg: format!("bad atom `{text}`"),
                    })
                }
            }
        }
    }
}
