use std::collections::BTreeSet;

use linmod_core::{Name, ScopedTerm, Signature, Subst, VarRef};
use thiserror::Error;

/// Untyped lambda term. Bound variables are de Bruijn indices, so
/// structural equality is alpha-equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LcTerm {
    Var(VarRef),
    App(Box<LcTerm>, Box<LcTerm>),
    Abs(Box<LcTerm>),
}

impl LcTerm {
    pub fn free(name: &str) -> Self {
        LcTerm::Var(VarRef::free(name))
    }

    pub fn var(name: Name) -> Self {
        LcTerm::Var(VarRef::Free(name))
    }

    pub fn bound(index: u32) -> Self {
        LcTerm::Var(VarRef::Bound(index))
    }

    pub fn app(f: LcTerm, a: LcTerm) -> Self {
        LcTerm::App(Box::new(f), Box::new(a))
    }

    pub fn abs(body: LcTerm) -> Self {
        LcTerm::Abs(Box::new(body))
    }

    pub fn size(&self) -> usize {
        match self {
            LcTerm::Var(_) => 1,
            LcTerm::App(f, a) => 1 + f.size() + a.size(),
            LcTerm::Abs(b) => 1 + b.size(),
        }
    }

    /// Every bound index is below its number of enclosing binders plus
    /// `depth`.
    pub fn is_well_scoped(&self, depth: u32) -> bool {
        match self {
            LcTerm::Var(VarRef::Free(_)) => true,
            LcTerm::Var(VarRef::Bound(i)) => *i < depth,
            LcTerm::App(f, a) => f.is_well_scoped(depth) && a.is_well_scoped(depth),
            LcTerm::Abs(b) => b.is_well_scoped(depth + 1),
        }
    }

    pub fn free_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<Name>) {
        match self {
            LcTerm::Var(VarRef::Free(n)) => {
                out.insert(n.clone());
            }
            LcTerm::Var(VarRef::Bound(_)) => {}
            LcTerm::App(f, a) => {
                f.collect_free(out);
                a.collect_free(out);
            }
            LcTerm::Abs(b) => b.collect_free(out),
        }
    }

    /// Whether the slot `index` levels above the top (not counting inner
    /// binders) occurs.
    pub fn uses_bound(&self, index: u32) -> bool {
        match self {
            LcTerm::Var(VarRef::Bound(i)) => *i == index,
            LcTerm::Var(VarRef::Free(_)) => false,
            LcTerm::App(f, a) => f.uses_bound(index) || a.uses_bound(index),
            LcTerm::Abs(b) => b.uses_bound(index + 1),
        }
    }

    /// Adds `amount` to every bound index `>= cutoff`.
    pub fn shifted(&self, amount: u32, cutoff: u32) -> LcTerm {
        if amount == 0 {
            return self.clone();
        }
        match self {
            LcTerm::Var(VarRef::Bound(i)) if *i >= cutoff => LcTerm::bound(i + amount),
            LcTerm::Var(_) => self.clone(),
            LcTerm::App(f, a) => LcTerm::app(f.shifted(amount, cutoff), a.shifted(amount, cutoff)),
            LcTerm::Abs(b) => LcTerm::abs(b.shifted(amount, cutoff + 1)),
        }
    }

    /// Inverse of [`lc_shift`] at `cutoff`; the slot at `cutoff` must not occur.
    pub(crate) fn unshifted(&self, cutoff: u32) -> LcTerm {
        match self {
            LcTerm::Var(VarRef::Bound(i)) if *i > cutoff => LcTerm::bound(i - 1),
            LcTerm::Var(_) => self.clone(),
            LcTerm::App(f, a) => LcTerm::app(f.unshifted(cutoff), a.unshifted(cutoff)),
            LcTerm::Abs(b) => LcTerm::abs(b.unshifted(cutoff + 1)),
        }
    }

    /// Binds the free name `marker` as a new outermost slot: the result
    /// lives one scope deeper, with `marker` at `Bound 0`.
    pub fn close(&self, marker: &Name) -> LcTerm {
        self.close_at(marker, 0)
    }

    fn close_at(&self, marker: &Name, depth: u32) -> LcTerm {
        match self {
            LcTerm::Var(VarRef::Free(n)) if n == marker => LcTerm::bound(depth),
            LcTerm::Var(VarRef::Bound(i)) if *i >= depth => LcTerm::bound(i + 1),
            LcTerm::Var(_) => self.clone(),
            LcTerm::App(f, a) => LcTerm::app(f.close_at(marker, depth), a.close_at(marker, depth)),
            LcTerm::Abs(b) => LcTerm::abs(b.close_at(marker, depth + 1)),
        }
    }

    /// Inverse of [`LcTerm::close`]: the outermost slot becomes the free
    /// name `marker`.
    pub fn open(&self, marker: &Name) -> LcTerm {
        lc_subst0(self, &LcTerm::var(marker.clone()))
    }
}

/// `shift : term X -> term (option X)`: moves a term one scope deeper.
pub fn lc_shift(t: &LcTerm) -> LcTerm {
    t.shifted(1, 0)
}

/// Simultaneous capture-avoiding substitution of free names. Images are
/// closed, so going under a binder leaves them unchanged.
pub fn lc_subst(s: &Subst<Name, LcTerm>, t: &LcTerm) -> LcTerm {
    subst_at(s, t, 0)
}

fn subst_at(s: &Subst<Name, LcTerm>, t: &LcTerm, depth: u32) -> LcTerm {
    match t {
        LcTerm::Var(VarRef::Free(n)) => match s.get(n) {
            Some(img) => img.shifted(depth, 0),
            None => t.clone(),
        },
        LcTerm::Var(VarRef::Bound(_)) => t.clone(),
        LcTerm::App(f, a) => LcTerm::app(subst_at(s, f, depth), subst_at(s, a, depth)),
        LcTerm::Abs(b) => LcTerm::abs(subst_at(s, b, depth + 1)),
    }
}

/// Substitutes `u` for the outermost slot of `t` (which is one scope
/// deeper than `u`), lowering the other dangling indices.
pub fn lc_subst0(t: &LcTerm, u: &LcTerm) -> LcTerm {
    subst_top(t, u, 0)
}

pub(crate) fn subst_top(t: &LcTerm, u: &LcTerm, depth: u32) -> LcTerm {
    match t {
        LcTerm::Var(VarRef::Bound(i)) => {
            if *i == depth {
                u.shifted(depth, 0)
            } else if *i > depth {
                LcTerm::bound(i - 1)
            } else {
                t.clone()
            }
        }
        LcTerm::Var(VarRef::Free(_)) => t.clone(),
        LcTerm::App(f, a) => LcTerm::app(subst_top(f, u, depth), subst_top(a, u, depth)),
        LcTerm::Abs(b) => LcTerm::abs(subst_top(b, u, depth + 1)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("term is not over the app/abs signature: {0}")]
pub struct NotLambda(pub String);

/// Index of `app` and `abs` in [`Signature::lambda`].
const APP: usize = 0;
const ABS: usize = 1;

pub fn to_scoped(t: &LcTerm) -> ScopedTerm {
    match t {
        LcTerm::Var(v) => ScopedTerm::Var(v.clone()),
        LcTerm::App(f, a) => ScopedTerm::Op(APP, vec![to_scoped(f), to_scoped(a)]),
        LcTerm::Abs(b) => ScopedTerm::Op(ABS, vec![to_scoped(b)]),
    }
}

pub fn from_scoped(t: &ScopedTerm) -> Result<LcTerm, NotLambda> {
    match t {
        ScopedTerm::Var(v) => Ok(LcTerm::Var(v.clone())),
        ScopedTerm::Op(APP, args) if args.len() == 2 => {
            Ok(LcTerm::app(from_scoped(&args[0])?, from_scoped(&args[1])?))
        }
        ScopedTerm::Op(ABS, args) if args.len() == 1 => Ok(LcTerm::abs(from_scoped(&args[0])?)),
        ScopedTerm::Op(op, args) => Err(NotLambda(format!(
            "operator {op} with {} arguments",
            args.len()
        ))),
    }
}

pub fn lambda_signature() -> Signature {
    Signature::lambda()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> LcTerm {
        LcTerm::free("x")
    }
    fn y() -> LcTerm {
        LcTerm::free("y")
    }

    #[test]
    fn shift_examples() {
        assert_eq!(lc_shift(&x()), x());
        assert_eq!(lc_shift(&LcTerm::bound(0)), LcTerm::bound(1));
        let id = LcTerm::abs(LcTerm::bound(0));
        assert_eq!(lc_shift(&id), id);
    }

    #[test]
    fn subst_examples() {
        let s = Subst::singleton(Name::new("y"), LcTerm::free("z"));
        assert_eq!(lc_subst(&s, &y()), LcTerm::free("z"));

        // \x. x y  with y := \z. z
        let t = LcTerm::abs(LcTerm::app(LcTerm::bound(0), y()));
        let id = LcTerm::abs(LcTerm::bound(0));
        let s = Subst::singleton(Name::new("y"), id.clone());
        assert_eq!(
            lc_subst(&s, &t),
            LcTerm::abs(LcTerm::app(LcTerm::bound(0), id.clone()))
        );

        // (t //= f) //= g = t //= (u |-> f u //= g)
        let f = Subst::singleton(Name::new("y"), LcTerm::free("w"));
        let g = Subst::singleton(Name::new("w"), id.clone());
        let fg: Subst<Name, LcTerm> = [
            (Name::new("y"), lc_subst(&g, &LcTerm::free("w"))),
            (Name::new("w"), id),
        ]
        .into_iter()
        .collect();
        assert_eq!(lc_subst(&g, &lc_subst(&f, &t)), lc_subst(&fg, &t));
    }

    #[test]
    fn subst0_examples() {
        let u = LcTerm::abs(LcTerm::bound(0));
        assert_eq!(lc_subst0(&LcTerm::bound(0), &u), u);
        assert_eq!(lc_subst0(&x(), &u), x());
        let dup = LcTerm::app(LcTerm::bound(0), LcTerm::bound(0));
        assert_eq!(lc_subst0(&dup, &y()), LcTerm::app(y(), y()));
        // dangling index above the substituted slot is lowered
        assert_eq!(lc_subst0(&LcTerm::bound(1), &y()), LcTerm::bound(0));
    }

    #[test]
    fn close_and_open_are_inverse() {
        let m = Name::fresh(0);
        let t = LcTerm::abs(LcTerm::app(LcTerm::bound(0), LcTerm::var(m.clone())));
        let closed = t.close(&m);
        assert_eq!(
            closed,
            LcTerm::abs(LcTerm::app(LcTerm::bound(0), LcTerm::bound(1)))
        );
        assert!(closed.is_well_scoped(1));
        assert_eq!(closed.open(&m), t);
    }

    #[test]
    fn scoped_conversion_rejects_foreign_operators() {
        let t = LcTerm::abs(LcTerm::app(LcTerm::bound(0), y()));
        assert_eq!(from_scoped(&to_scoped(&t)).unwrap(), t);
        assert!(from_scoped(&ScopedTerm::Op(2, vec![])).is_err());
        assert!(from_scoped(&ScopedTerm::Op(0, vec![ScopedTerm::free("x")])).is_err());
    }
}
