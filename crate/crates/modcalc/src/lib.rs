//! Combinators on left modules (derivation, products, evaluation, base
//! change along monad morphisms) and the `+`/`*` monad whose swapping
//! transformation fails to be linear.

pub mod combinators;
pub mod pt;

pub use combinators::{
    base_change, derive, eval_morphism, eval_source, lift_subst, product, SecondDerivative,
    BASE_CHANGE_SAMPLES,
};
pub use pt::{
    check_n_linearity, gen_pt, n_transform, parse_pt, pt_bind, pt_monad, show_nested, PtParseError,
    PtTerm, PT_POOL,
};
