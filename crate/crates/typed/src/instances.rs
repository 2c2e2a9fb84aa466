//! Type-directed generators, the STLC monads and their fiber modules, and
//! the typed linearity suite.

use linmod_core::gen::pick;
use linmod_core::{
    BindError, LawReport, LinearityCheck, ModuleInstance, MonadInstance, Rng, Subst,
};
use linmod_lambda::Fuel;
use linmod_modcalc::product;
use rand::Rng as _;

use crate::stlc::{stlc_eta_step, stlc_normalize, stlc_subst, StlcTerm};
use crate::types::{small_types, SimpleType, TypedVar};

pub fn stlc_pool() -> Vec<TypedVar> {
    let b = || SimpleType::Base;
    let b2b = || SimpleType::arrow(b(), b());
    vec![
        TypedVar::new("x", b()),
        TypedVar::new("y", b()),
        TypedVar::new("f", b2b()),
        TypedVar::new("g", b2b()),
        TypedVar::new("k", SimpleType::arrow(b(), b2b())),
        TypedVar::new("h", SimpleType::arrow(b2b(), b())),
    ]
}

/// Random term of type `ty` in a scope whose bound slots have the types in
/// `bound` (innermost last). With `redexes` false the result is β-normal.
pub fn gen_stlc_of(
    rng: &mut Rng,
    pool: &[TypedVar],
    bound: &mut Vec<SimpleType>,
    ty: &SimpleType,
    size: usize,
    redexes: bool,
) -> StlcTerm {
    let mut heads: Vec<(StlcTerm, Vec<SimpleType>)> = Vec::new();
    for v in pool {
        if let Some(args) = v.ty.args_to(ty) {
            heads.push((StlcTerm::free(v.clone()), args));
        }
    }
    for (k, b) in bound.iter().enumerate() {
        if let Some(args) = b.args_to(ty) {
            heads.push((StlcTerm::bound((bound.len() - 1 - k) as u32), args));
        }
    }
    let affordable: Vec<&(StlcTerm, Vec<SimpleType>)> = heads
        .iter()
        .filter(|(_, args)| 2 * args.len() < size.max(1))
        .collect();

    if let SimpleType::Arrow(dom, cod) = ty {
        if affordable.is_empty() || (size >= 2 && rng.gen_bool(0.4)) {
            bound.push((**dom).clone());
            let body = gen_stlc_of(rng, pool, bound, cod, size.saturating_sub(1), redexes);
            bound.pop();
            return StlcTerm::abs((**dom).clone(), body);
        }
    }
    if redexes && size >= 4 && rng.gen_bool(0.2) {
        let arg_ty = pick(rng, &small_types()[..2]).unwrap().clone();
        let (l, r) = split(rng, size - 2);
        bound.push(arg_ty.clone());
        let body = gen_stlc_of(rng, pool, bound, ty, l, redexes);
        bound.pop();
        let arg = gen_stlc_of(rng, pool, bound, &arg_ty, r, redexes);
        return StlcTerm::app(StlcTerm::abs(arg_ty, body), arg);
    }
    let applied: Vec<&(StlcTerm, Vec<SimpleType>)> = affordable
        .iter()
        .copied()
        .filter(|(_, args)| !args.is_empty())
        .collect();
    let choice = if affordable.is_empty() {
        heads.iter().min_by_key(|(_, args)| args.len())
    } else if size >= 3 && !applied.is_empty() && rng.gen_bool(0.85) {
        Some(applied[rng.gen_range(0..applied.len())])
    } else {
        Some(affordable[rng.gen_range(0..affordable.len())])
    };
    let Some((head, args)) = choice else {
        // no variable ends in `ty`; only reachable with a custom pool
        return StlcTerm::free(TypedVar::new("x", ty.clone()));
    };
    let mut t = head.clone();
    let per_arg = size.saturating_sub(1 + args.len()) / args.len().max(1);
    for a in args {
        let budget = 1 + rng.gen_range(per_arg / 2..=per_arg);
        t = StlcTerm::app(t, gen_stlc_of(rng, pool, bound, a, budget, redexes));
    }
    t
}

fn split(rng: &mut Rng, size: usize) -> (usize, usize) {
    let l = rng.gen_range(1..size.max(2));
    (l, size.saturating_sub(l).max(1))
}

/// Random closed term of a random small type.
pub fn gen_stlc(rng: &mut Rng, pool: &[TypedVar], size: usize) -> StlcTerm {
    let ty = pick(rng, &small_types()).unwrap().clone();
    gen_stlc_of(rng, pool, &mut Vec::new(), &ty, size, true)
}

/// Random βη-normal term of type `ty`.
pub fn gen_stlc_nf_of(
    rng: &mut Rng,
    pool: &[TypedVar],
    bound: &[SimpleType],
    ty: &SimpleType,
    size: usize,
) -> StlcTerm {
    let mut t = gen_stlc_of(rng, pool, &mut bound.to_vec(), ty, size, false);
    while let Some(next) = stlc_eta_step(&t) {
        t = next;
    }
    t
}

fn rejected(e: impl ToString) -> BindError {
    BindError::Rejected(e.to_string())
}

/// Simply typed terms under type-preserving substitution.
pub fn stlc_monad() -> MonadInstance<TypedVar, StlcTerm> {
    MonadInstance::new(
        "stlc",
        stlc_pool(),
        |v: &TypedVar| StlcTerm::free(v.clone()),
        |s, t| stlc_subst(s, t).map_err(rejected),
        gen_stlc,
    )
    .with_image_gen(|rng, v, pool, size| gen_stlc_of(rng, pool, &mut Vec::new(), &v.ty, size, true))
    .with_show(|t: &StlcTerm| t.to_string())
    .with_max_size(10)
}

/// βη-normal typed terms, renormalizing after substitution.
pub fn stlc_nf_monad(fuel_steps: u64) -> MonadInstance<TypedVar, StlcTerm> {
    MonadInstance::new(
        "stlc-nf",
        stlc_pool(),
        |v: &TypedVar| StlcTerm::free(v.clone()),
        move |s, t| nf_bind(s, t, fuel_steps),
        |rng: &mut Rng, pool: &[TypedVar], size: usize| {
            let ty = pick(rng, &small_types()).unwrap().clone();
            gen_stlc_nf_of(rng, pool, &[], &ty, size)
        },
    )
    .with_image_gen(|rng, v, pool, size| gen_stlc_nf_of(rng, pool, &[], &v.ty, size))
    .with_show(|t: &StlcTerm| t.to_string())
    .with_max_size(10)
}

fn nf_bind(
    s: &Subst<TypedVar, StlcTerm>,
    t: &StlcTerm,
    fuel_steps: u64,
) -> Result<StlcTerm, BindError> {
    let substituted = stlc_subst(s, t).map_err(rejected)?;
    stlc_normalize(&substituted, &mut Fuel::new(fuel_steps))
        .map_err(|e| BindError::Exhausted(e.to_string()))
}

/// The fiber of type `ty` as a module over `base`, with elements in the
/// scope extended by slots of types `bound` (innermost last).
pub fn fiber(
    base: &MonadInstance<TypedVar, StlcTerm>,
    bound: Vec<SimpleType>,
    ty: SimpleType,
    normal: bool,
) -> ModuleInstance<TypedVar, StlcTerm, StlcTerm> {
    let name = if bound.is_empty() {
        format!("{}[{ty}]", base.name())
    } else {
        let slots: Vec<String> = bound.iter().map(|b| format!("δ_{{{b}}}")).collect();
        format!("{}{}[{ty}]", slots.join(""), base.name())
    };
    let bind = base.clone();
    ModuleInstance::new(
        name,
        base,
        move |rng: &mut Rng, pool: &[TypedVar], size: usize| {
            if normal {
                gen_stlc_nf_of(rng, pool, &bound, &ty, size)
            } else {
                gen_stlc_of(rng, pool, &mut bound.clone(), &ty, size, true)
            }
        },
        move |s, t| bind.bind(s, t),
    )
    .with_show(|t: &StlcTerm| t.to_string())
}

/// `δ_s` of the fiber of type `t`: terms of type `t` with one extra slot
/// of type `s`.
pub fn delta_module(
    base: &MonadInstance<TypedVar, StlcTerm>,
    s: SimpleType,
    t: SimpleType,
) -> ModuleInstance<TypedVar, StlcTerm, StlcTerm> {
    fiber(base, vec![s], t, false)
}

fn merge(
    suite: &str,
    instance: &str,
    samples: usize,
    seed: u64,
    reports: Vec<LawReport>,
) -> LawReport {
    LawReport {
        suite: suite.to_string(),
        instance: instance.to_string(),
        samples,
        seed,
        laws: reports.into_iter().flat_map(|r| r.laws).collect(),
    }
}

/// Type pairs the linearity suite ranges over.
pub fn suite_types() -> Vec<(SimpleType, SimpleType)> {
    let tys = &small_types()[..3];
    tys.iter()
        .flat_map(|s| tys.iter().map(move |t| (s.clone(), t.clone())))
        .collect()
}

/// `app_{s,t}` and `abs_{s,t}` squares for every pair of
/// [`suite_types`], on syntax and on normal forms.
pub fn stlc_linearity_suite(samples: usize, seed: u64, fuel_steps: u64) -> LawReport {
    let syn = stlc_monad();
    let sem = stlc_nf_monad(fuel_steps);
    let mut reports = Vec::new();
    for (s, t) in suite_types() {
        let st = SimpleType::arrow(s.clone(), t.clone());
        for (base, normal) in [(&syn, false), (&sem, true)] {
            let tag = if normal { "nf" } else { "syn" };
            let fun = fiber(base, vec![], st.clone(), normal);
            let arg = fiber(base, vec![], s.clone(), normal);
            let res = fiber(base, vec![], t.clone(), normal);
            let pair = product(&fun, &arg).expect("same base");
            let app = move |(f, a): &(StlcTerm, StlcTerm)| {
                let t = StlcTerm::app(f.clone(), a.clone());
                if normal {
                    stlc_normalize(&t, &mut Fuel::new(fuel_steps))
                        .map_err(|e| BindError::Exhausted(e.to_string()))
                } else {
                    Ok(t)
                }
            };
            reports.push(
                LinearityCheck::new(format!("app {tag} ({s}, {t})"), &pair, &res, app)
                    .run(samples, seed),
            );
            let body = fiber(base, vec![s.clone()], t.clone(), normal);
            let abs_ty = s.clone();
            let abs = move |b: &StlcTerm| {
                let t = StlcTerm::abs(abs_ty.clone(), b.clone());
                if normal {
                    stlc_normalize(&t, &mut Fuel::new(fuel_steps))
                        .map_err(|e| BindError::Exhausted(e.to_string()))
                } else {
                    Ok(t)
                }
            };
            reports.push(
                LinearityCheck::new(format!("abs {tag} ({s}, {t})"), &body, &fun, abs)
                    .run(samples, seed),
            );
        }
    }
    merge("linearity", "stlc app/abs", samples, seed, reports)
}
