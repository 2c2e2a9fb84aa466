//! Untyped lambda calculus as a monad: terms with capture-avoiding
//! substitution, β/η reduction, βη-normal forms as an exponential monad,
//! the initial fold out of syntax, and the reduction preorder.

pub mod exp;
pub mod instances;
pub mod preorder;
pub mod reduce;
pub mod syntax;
pub mod term;

pub use exp::{
    exp_abs, exp_app1, iota_fold, lc_exp, nf_bind, nf_exp, nf_monad, nf_projection,
    nf_representation, ExpStructure,
};
pub use instances::{gen_lc, gen_lc_at, gen_nf, gen_nf_at, lc_derived_module, lc_monad, LC_POOL};
pub use preorder::{one_step_reducts, preorder_leq, LeqOutcome, SEARCH_LIMIT};
pub use reduce::{
    beta_eta_equiv, beta_step, eta_step, is_normal, normalize, Equivalence, Exhausted, Fuel,
    NfTerm, NotNormal, DEFAULT_SIZE_CAP,
};
pub use syntax::{parse_term, DeBruijn, Named, ParseError};
pub use term::{
    from_scoped, lambda_signature, lc_shift, lc_subst, lc_subst0, to_scoped, LcTerm, NotLambda,
};
