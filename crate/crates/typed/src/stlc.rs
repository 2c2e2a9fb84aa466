//! Simply typed lambda terms (Church style), typing, substitution and
//! βη-normalization.

use std::collections::BTreeMap;

use linmod_core::{Name, Subst};
use linmod_lambda::{Exhausted, Fuel};
use thiserror::Error;

use crate::types::{SimpleType, TypedVar};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypedVarRef {
    Free(TypedVar),
    Bound(u32),
}

/// A typed term; `Abs` records the type of the variable it binds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StlcTerm {
    Var(TypedVarRef),
    App(Box<StlcTerm>, Box<StlcTerm>),
    Abs(SimpleType, Box<StlcTerm>),
}

impl StlcTerm {
    pub fn free(v: TypedVar) -> Self {
        StlcTerm::Var(TypedVarRef::Free(v))
    }

    pub fn bound(i: u32) -> Self {
        StlcTerm::Var(TypedVarRef::Bound(i))
    }

    pub fn app(f: StlcTerm, a: StlcTerm) -> Self {
        StlcTerm::App(Box::new(f), Box::new(a))
    }

    pub fn abs(ty: SimpleType, body: StlcTerm) -> Self {
        StlcTerm::Abs(ty, Box::new(body))
    }

    pub fn size(&self) -> usize {
        match self {
            StlcTerm::Var(_) => 1,
            StlcTerm::App(f, a) => 1 + f.size() + a.size(),
            StlcTerm::Abs(_, b) => 1 + b.size(),
        }
    }

    pub fn uses_bound(&self, index: u32) -> bool {
        match self {
            StlcTerm::Var(TypedVarRef::Bound(i)) => *i == index,
            StlcTerm::Var(_) => false,
            StlcTerm::App(f, a) => f.uses_bound(index) || a.uses_bound(index),
            StlcTerm::Abs(_, b) => b.uses_bound(index + 1),
        }
    }

    pub fn shifted(&self, amount: u32, cutoff: u32) -> StlcTerm {
        if amount == 0 {
            return self.clone();
        }
        match self {
            StlcTerm::Var(TypedVarRef::Bound(i)) if *i >= cutoff => StlcTerm::bound(i + amount),
            StlcTerm::Var(_) => self.clone(),
            StlcTerm::App(f, a) => {
                StlcTerm::app(f.shifted(amount, cutoff), a.shifted(amount, cutoff))
            }
            StlcTerm::Abs(ty, b) => StlcTerm::abs(ty.clone(), b.shifted(amount, cutoff + 1)),
        }
    }

    fn unshifted(&self, cutoff: u32) -> StlcTerm {
        match self {
            StlcTerm::Var(TypedVarRef::Bound(i)) if *i > cutoff => StlcTerm::bound(i - 1),
            StlcTerm::Var(_) => self.clone(),
            StlcTerm::App(f, a) => StlcTerm::app(f.unshifted(cutoff), a.unshifted(cutoff)),
            StlcTerm::Abs(ty, b) => StlcTerm::abs(ty.clone(), b.unshifted(cutoff + 1)),
        }
    }
}

/// `δ_t`: moves a term into the scope extended by one variable (of the
/// type the caller records for the new slot).
pub fn delta_extend(t: &StlcTerm) -> StlcTerm {
    t.shifted(1, 0)
}

pub type Context = BTreeMap<Name, SimpleType>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("`{name}` is declared {declared} but the context gives {context}")]
    Declared {
        name: String,
        declared: SimpleType,
        context: SimpleType,
    },
    #[error("dangling bound index {0}")]
    Dangling(u32),
    #[error("cannot apply `{fun}` of type {ty}: not a function")]
    NotAFunction { fun: String, ty: SimpleType },
    #[error("argument `{arg}` has type {found}, expected {expected}")]
    ArgMismatch {
        arg: String,
        expected: SimpleType,
        found: SimpleType,
    },
    #[error("image of {var} has type {found}")]
    ImageType { var: TypedVar, found: SimpleType },
}

/// The type of `t` in `ctx`. Every free variable must be in `ctx` with its
/// declared type.
pub fn typecheck(ctx: &Context, t: &StlcTerm) -> Result<SimpleType, TypeError> {
    synth(Some(ctx), &mut Vec::new(), t)
}

/// The type of `t`, trusting the types its free variables declare;
/// `bound` gives the types of dangling slots, innermost last.
pub fn type_of(bound: &[SimpleType], t: &StlcTerm) -> Result<SimpleType, TypeError> {
    synth(None, &mut bound.to_vec(), t)
}

fn synth(
    ctx: Option<&Context>,
    bound: &mut Vec<SimpleType>,
    t: &StlcTerm,
) -> Result<SimpleType, TypeError> {
    match t {
        StlcTerm::Var(TypedVarRef::Free(v)) => match ctx {
            None => Ok(v.ty.clone()),
            Some(ctx) => match ctx.get(&v.name) {
                None => Err(TypeError::Unbound(v.name.to_string())),
                Some(ty) if *ty != v.ty => Err(TypeError::Declared {
                    name: v.name.to_string(),
                    declared: v.ty.clone(),
                    context: ty.clone(),
                }),
                Some(ty) => Ok(ty.clone()),
            },
        },
        StlcTerm::Var(TypedVarRef::Bound(i)) => bound
            .len()
            .checked_sub(1 + *i as usize)
            .map(|k| bound[k].clone())
            .ok_or(TypeError::Dangling(*i)),
        StlcTerm::Abs(ty, body) => {
            bound.push(ty.clone());
            let cod = synth(ctx, bound, body);
            bound.pop();
            Ok(SimpleType::arrow(ty.clone(), cod?))
        }
        StlcTerm::App(f, a) => {
            let fty = synth(ctx, bound, f)?;
            let aty = synth(ctx, bound, a)?;
            match fty {
                SimpleType::Arrow(dom, cod) => {
                    if *dom == aty {
                        Ok(*cod)
                    } else {
                        Err(TypeError::ArgMismatch {
                            arg: a.to_string(),
                            expected: *dom,
                            found: aty,
                        })
                    }
                }
                SimpleType::Base => Err(TypeError::NotAFunction {
                    fun: f.to_string(),
                    ty: fty,
                }),
            }
        }
    }
}

/// Type-preserving substitution: every image must have the type of the
/// variable it replaces.
pub fn stlc_subst(s: &Subst<TypedVar, StlcTerm>, t: &StlcTerm) -> Result<StlcTerm, TypeError> {
    for (v, img) in s.iter() {
        let found = type_of(&[], img)?;
        if found != v.ty {
            return Err(TypeError::ImageType {
                var: v.clone(),
                found,
            });
        }
    }
    Ok(subst_at(s, t, 0))
}

fn subst_at(s: &Subst<TypedVar, StlcTerm>, t: &StlcTerm, depth: u32) -> StlcTerm {
    match t {
        StlcTerm::Var(TypedVarRef::Free(v)) => match s.get(v) {
            Some(img) => img.shifted(depth, 0),
            None => t.clone(),
        },
        StlcTerm::Var(TypedVarRef::Bound(_)) => t.clone(),
        StlcTerm::App(f, a) => StlcTerm::app(subst_at(s, f, depth), subst_at(s, a, depth)),
        StlcTerm::Abs(ty, b) => StlcTerm::abs(ty.clone(), subst_at(s, b, depth + 1)),
    }
}

/// Substitutes `u` for the outermost slot of `t`.
pub fn stlc_subst0(t: &StlcTerm, u: &StlcTerm) -> StlcTerm {
    subst_top(t, u, 0)
}

fn subst_top(t: &StlcTerm, u: &StlcTerm, depth: u32) -> StlcTerm {
    match t {
        StlcTerm::Var(TypedVarRef::Bound(i)) => {
            if *i == depth {
                u.shifted(depth, 0)
            } else if *i > depth {
                StlcTerm::bound(i - 1)
            } else {
                t.clone()
            }
        }
        StlcTerm::Var(_) => t.clone(),
        StlcTerm::App(f, a) => StlcTerm::app(subst_top(f, u, depth), subst_top(a, u, depth)),
        StlcTerm::Abs(ty, b) => StlcTerm::abs(ty.clone(), subst_top(b, u, depth + 1)),
    }
}

/// Contracts the leftmost-outermost β-redex.
pub fn stlc_beta_step(t: &StlcTerm) -> Option<StlcTerm> {
    let mut t = t.clone();
    beta_in_place(&mut t).then_some(t)
}

fn beta_in_place(t: &mut StlcTerm) -> bool {
    match t {
        StlcTerm::Var(_) => false,
        StlcTerm::Abs(_, body) => beta_in_place(body),
        StlcTerm::App(f, a) => {
            if let StlcTerm::Abs(_, body) = &**f {
                *t = subst_top(body, a, 0);
                return true;
            }
            beta_in_place(f) || beta_in_place(a)
        }
    }
}

fn is_eta_redex(body: &StlcTerm) -> bool {
    matches!(body, StlcTerm::App(u, arg)
        if **arg == StlcTerm::bound(0) && !u.uses_bound(0))
}

/// Contracts the leftmost-outermost η-redex.
pub fn stlc_eta_step(t: &StlcTerm) -> Option<StlcTerm> {
    let mut t = t.clone();
    eta_in_place(&mut t).then_some(t)
}

fn eta_in_place(t: &mut StlcTerm) -> bool {
    match t {
        StlcTerm::Var(_) => false,
        StlcTerm::Abs(_, body) => {
            if is_eta_redex(body) {
                let StlcTerm::App(u, _) = &**body else {
                    unreachable!()
                };
                *t = u.unshifted(0);
                return true;
            }
            eta_in_place(body)
        }
        StlcTerm::App(f, a) => eta_in_place(f) || eta_in_place(a),
    }
}

pub fn stlc_is_normal(t: &StlcTerm) -> bool {
    match t {
        StlcTerm::Var(_) => true,
        StlcTerm::App(f, a) => {
            !matches!(**f, StlcTerm::Abs(..)) && stlc_is_normal(f) && stlc_is_normal(a)
        }
        StlcTerm::Abs(_, b) => !is_eta_redex(b) && stlc_is_normal(b),
    }
}

/// β to normal form, then η to normal form.
pub fn stlc_normalize(t: &StlcTerm, fuel: &mut Fuel) -> Result<StlcTerm, Exhausted> {
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
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star() -> SimpleType {
        SimpleType::Base
    }

    fn y() -> StlcTerm {
        StlcTerm::free(TypedVar::new("y", star()))
    }

    fn id() -> StlcTerm {
        StlcTerm::abs(star(), StlcTerm::bound(0))
    }

    #[test]
    fn typing_examples() {
        let ctx: Context = [(Name::new("y"), star())].into_iter().collect();
        assert_eq!(
            typecheck(&ctx, &id()),
            Ok(SimpleType::arrow(star(), star()))
        );
        assert_eq!(typecheck(&ctx, &StlcTerm::app(id(), y())), Ok(star()));
        assert!(matches!(
            typecheck(&ctx, &StlcTerm::app(y(), y())),
            Err(TypeError::NotAFunction { .. })
        ));
        assert!(matches!(
            typecheck(&Context::new(), &y()),
            Err(TypeError::Unbound(_))
        ));
    }

    #[test]
    fn subst_examples() {
        let z = StlcTerm::free(TypedVar::new("z", star()));
        let s = Subst::singleton(TypedVar::new("y", star()), z.clone());
        assert_eq!(stlc_subst(&s, &y()).unwrap(), z);
        let bad = Subst::singleton(TypedVar::new("y", star()), id());
        assert!(matches!(
            stlc_subst(&bad, &y()),
            Err(TypeError::ImageType { .. })
        ));
    }

    #[test]
    fn normalize_examples() {
        let t = StlcTerm::app(id(), y());
        assert_eq!(stlc_normalize(&t, &mut Fuel::new(10)).unwrap(), y());

        // (\f:*->*. \x:*. f (f x)) (\x:*. x)  ~>  \x:*. x
        let sa = SimpleType::arrow(star(), star());
        let twice = StlcTerm::abs(
            sa,
            StlcTerm::abs(
                star(),
                StlcTerm::app(
                    StlcTerm::bound(1),
                    StlcTerm::app(StlcTerm::bound(1), StlcTerm::bound(0)),
                ),
            ),
        );
        let t = StlcTerm::app(twice, id());
        assert_eq!(stlc_normalize(&t, &mut Fuel::new(100)).unwrap(), id());
    }

    #[test]
    fn eta_keeps_binder_types_consistent() {
        let f = StlcTerm::free(TypedVar::new("f", SimpleType::arrow(star(), star())));
        let t = StlcTerm::abs(star(), StlcTerm::app(f.clone(), StlcTerm::bound(0)));
        assert_eq!(stlc_eta_step(&t), Some(f));
    }
}
