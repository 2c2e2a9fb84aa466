//! β and η reduction, fuel-bounded normalization and βη-equivalence.

use std::fmt;

use linmod_core::VarRef;
use thiserror::Error;

use crate::term::{subst_top, LcTerm};

/// Size cap applied by [`Fuel::new`]; the reducer works recursively, so
/// terms may not grow without bound even while steps remain.
pub const DEFAULT_SIZE_CAP: usize = 4096;

/// Step budget for reduction, plus a cap on intermediate term size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fuel {
    remaining: u64,
    spent: u64,
    size_cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum Exhausted {
    #[error("fuel exhausted after {0} steps")]
    Steps(u64),
    #[error("term grew beyond {0} nodes")]
    Size(usize),
}

impl Fuel {
    pub fn new(steps: u64) -> Self {
        Fuel {
            remaining: steps,
            spent: 0,
            size_cap: DEFAULT_SIZE_CAP,
        }
    }

    pub fn with_size_cap(mut self, cap: usize) -> Self {
        self.size_cap = cap;
        self
    }

    pub fn remaining(&self) -> u64 {
        self.remaining
    }

    /// Steps consumed so far.
    pub fn spent(&self) -> u64 {
        self.spent
    }

    /// Consumes one step.
    pub fn tick(&mut self) -> Result<(), Exhausted> {
        if self.remaining == 0 {
            return Err(Exhausted::Steps(self.spent));
        }
        self.remaining -= 1;
        self.spent += 1;
        Ok(())
    }

    /// Fails once a term exceeds the size cap.
    pub fn check_size(&self, size: usize) -> Result<(), Exhausted> {
        if size > self.size_cap {
            return Err(Exhausted::Size(self.size_cap));
        }
        Ok(())
    }
}

/// Contracts the leftmost-outermost β-redex.
pub fn beta_step(t: &LcTerm) -> Option<LcTerm> {
    let mut t = t.clone();
    beta_in_place(&mut t).then_some(t)
}

fn beta_in_place(t: &mut LcTerm) -> bool {
    match t {
        LcTerm::Var(_) => false,
        LcTerm::Abs(body) => beta_in_place(body),
        LcTerm::App(f, a) => {
            if let LcTerm::Abs(body) = &**f {
                *t = subst_top(body, a, 0);
                return true;
            }
            beta_in_place(f) || beta_in_place(a)
        }
    }
}

/// Whether `t` is `λ. u 0` with the bound slot absent from `u`.
fn is_eta_redex(body: &LcTerm) -> bool {
    matches!(body, LcTerm::App(u, arg)
        if **arg == LcTerm::Var(VarRef::Bound(0)) && !u.uses_bound(0))
}

/// Contracts the leftmost-outermost η-redex `λ. (shift u) 0 ~> u`.
pub fn eta_step(t: &LcTerm) -> Option<LcTerm> {
    let mut t = t.clone();
    eta_in_place(&mut t).then_some(t)
}

fn eta_in_place(t: &mut LcTerm) -> bool {
    match t {
        LcTerm::Var(_) => false,
        LcTerm::Abs(body) => {
            if is_eta_redex(body) {
                let LcTerm::App(u, _) = &**body else {
                    unreachable!()
                };
                *t = u.unshifted(0);
                return true;
            }
            eta_in_place(body)
        }
        LcTerm::App(f, a) => eta_in_place(f) || eta_in_place(a),
    }
}

/// β to normal form, then η to normal form, one unit of fuel per step.
pub fn normalize(t: &LcTerm, fuel: &mut Fuel) -> Result<NfTerm, Exhausted> {
    let mut t = t.clone();
    loop {
        fuel.check_size(t.size())?;
        if !beta_in_place(&mut t) {
            break;
        }
        fuel.tick()?;
    }
    while eta_in_place(&mut t) {
        fuel.tick()?;
    }
    Ok(NfTerm(t))
}

/// A β-normal, η-reduced term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NfTerm(LcTerm);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a normal form: {0}")]
pub struct NotNormal(pub String);

impl NfTerm {
    pub fn new(t: LcTerm) -> Result<Self, NotNormal> {
        match find_redex(&t) {
            Some(why) => Err(NotNormal(why)),
            None => Ok(NfTerm(t)),
        }
    }

    pub fn var(name: linmod_core::Name) -> Self {
        NfTerm(LcTerm::var(name))
    }

    pub fn term(&self) -> &LcTerm {
        &self.0
    }

    pub fn into_term(self) -> LcTerm {
        self.0
    }

    /// Wraps a term the caller knows to be normal.
    pub(crate) fn trusted(t: LcTerm) -> Self {
        debug_assert!(is_normal(&t), "not normal: {t}");
        NfTerm(t)
    }
}

impl fmt::Display for NfTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn is_normal(t: &LcTerm) -> bool {
    find_redex(t).is_none()
}

fn find_redex(t: &LcTerm) -> Option<String> {
    match t {
        LcTerm::Var(_) => None,
        LcTerm::App(f, a) => {
            if matches!(**f, LcTerm::Abs(_)) {
                return Some(format!("β-redex {t}"));
            }
            find_redex(f).or_else(|| find_redex(a))
        }
        LcTerm::Abs(body) => {
            if is_eta_redex(body) {
                return Some(format!("η-redex {t}"));
            }
            find_redex(body)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    Inequivalent,
    Inconclusive,
}

impl fmt::Display for Equivalence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Equivalence::Equivalent => "equivalent",
            Equivalence::Inequivalent => "inequivalent",
            Equivalence::Inconclusive => "inconclusive",
        })
    }
}

/// Decides βη-equivalence by comparing normal forms; each side gets its
/// own copy of `fuel`.
pub fn beta_eta_equiv(t1: &LcTerm, t2: &LcTerm, fuel: Fuel) -> Equivalence {
    match (
        normalize(t1, &mut fuel.clone()),
        normalize(t2, &mut fuel.clone()),
    ) {
        (Ok(a), Ok(b)) if a == b => Equivalence::Equivalent,
        (Ok(_), Ok(_)) => Equivalence::Inequivalent,
        _ => Equivalence::Inconclusive,
    }
}
