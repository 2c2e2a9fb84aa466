//! Generators and the shipped descriptors over lambda terms.

use linmod_core::gen::pick;
use linmod_core::{ModuleInstance, MonadInstance, Name, Rng};
use rand::Rng as _;

use crate::reduce::NfTerm;
use crate::term::{lc_subst, LcTerm};

/// Free names the shipped instances draw from.
pub const LC_POOL: [&str; 4] = ["x", "y", "z", "w"];

fn lc_pool() -> Vec<Name> {
    LC_POOL.iter().map(|s| Name::new(s)).collect()
}

fn gen_var(rng: &mut Rng, pool: &[Name], depth: u32) -> LcTerm {
    if depth > 0 && (pool.is_empty() || rng.gen_bool(0.5)) {
        return LcTerm::bound(rng.gen_range(0..depth));
    }
    match pick(rng, pool) {
        Some(n) => LcTerm::var(n.clone()),
        None => LcTerm::free("x"),
    }
}

/// Two nonempty child budgets for an application node.
fn split_app(rng: &mut Rng, size: usize) -> (usize, usize) {
    let l = rng.gen_range(1..=size - 2);
    (l, size - 1 - l)
}

/// Random term of at most `size` nodes, well-scoped at `depth`.
pub fn gen_lc_at(rng: &mut Rng, pool: &[Name], size: usize, depth: u32) -> LcTerm {
    if size <= 1 {
        return gen_var(rng, pool, depth);
    }
    if size < 3 || rng.gen_bool(0.4) {
        LcTerm::abs(gen_lc_at(rng, pool, size - 1, depth + 1))
    } else {
        let (l, r) = split_app(rng, size);
        LcTerm::app(
            gen_lc_at(rng, pool, l, depth),
            gen_lc_at(rng, pool, r, depth),
        )
    }
}

/// Random closed term (free names from `pool`).
pub fn gen_lc(rng: &mut Rng, pool: &[Name], size: usize) -> LcTerm {
    gen_lc_at(rng, pool, size, 0)
}

/// Random β-normal term: `N ::= λ. N | A`, `A ::= v | A N`.
fn gen_beta_normal(rng: &mut Rng, pool: &[Name], size: usize, depth: u32) -> LcTerm {
    if size > 1 && rng.gen_bool(0.3) {
        return LcTerm::abs(gen_beta_normal(rng, pool, size - 1, depth + 1));
    }
    gen_neutral(rng, pool, size, depth)
}

fn gen_neutral(rng: &mut Rng, pool: &[Name], size: usize, depth: u32) -> LcTerm {
    if size < 3 {
        return gen_var(rng, pool, depth);
    }
    let (l, r) = split_app(rng, size);
    LcTerm::app(
        gen_neutral(rng, pool, l, depth),
        gen_beta_normal(rng, pool, r, depth),
    )
}

/// Random βη-normal term, η-reducing a random β-normal one.
pub fn gen_nf(rng: &mut Rng, pool: &[Name], size: usize) -> NfTerm {
    gen_nf_at(rng, pool, size, 0)
}

/// Random βη-normal term well-scoped at `depth`.
pub fn gen_nf_at(rng: &mut Rng, pool: &[Name], size: usize, depth: u32) -> NfTerm {
    let mut t = gen_beta_normal(rng, pool, size, depth);
    while let Some(next) = crate::reduce::eta_step(&t) {
        t = next;
    }
    NfTerm::new(t).expect("η-reducing a β-normal term leaves it normal")
}

/// Untyped lambda terms under capture-avoiding substitution.
pub fn lc_monad() -> MonadInstance<Name, LcTerm> {
    MonadInstance::new(
        "lc",
        lc_pool(),
        |v: &Name| LcTerm::var(v.clone()),
        |s, t| Ok(lc_subst(s, t)),
        gen_lc,
    )
    .with_show(|t: &LcTerm| t.to_string())
}

/// The derivative `LC'`: terms with one dangling bound slot, acted on by
/// substitution of their free names.
pub fn lc_derived_module() -> ModuleInstance<Name, LcTerm, LcTerm> {
    ModuleInstance::new(
        "lc'",
        &lc_monad(),
        |rng: &mut Rng, pool: &[Name], size: usize| gen_lc_at(rng, pool, size, 1),
        |s, t| Ok(lc_subst(s, t)),
    )
    .with_show(|t: &LcTerm| t.debruijn().to_string())
}
