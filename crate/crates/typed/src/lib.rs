//! Monads over τ-sets: the simply typed lambda calculus, where each binder
//! adds a variable of a given type, and typed lists, where the sorts are
//! the nesting depths.

pub mod instances;
pub mod stlc;
pub mod syntax;
pub mod tlist;
pub mod types;

pub use instances::{
    delta_module, fiber, gen_stlc, gen_stlc_nf_of, gen_stlc_of, stlc_linearity_suite, stlc_monad,
    stlc_nf_monad, stlc_pool, suite_types,
};
pub use stlc::{
    delta_extend, stlc_beta_step, stlc_eta_step, stlc_is_normal, stlc_normalize, stlc_subst,
    stlc_subst0, type_of, typecheck, Context, StlcTerm, TypeError, TypedVarRef,
};
pub use syntax::{parse_context, parse_stlc, parse_type, StlcParseError};
pub use tlist::{
    cons_source, gen_tlist, gen_tlist_of, parse_tlist, shift_sorts, shifted_module, sort_of,
    tlist_fiber, tlist_linearity_suite, tlist_monad, tlist_pool, tlist_subst, ListSort, SortError,
    TListTerm, TListVar, MAX_SORT,
};
pub use types::{small_types, SimpleType, TypedVar};
