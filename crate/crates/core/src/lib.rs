//! Monads, left modules over monads and linear morphisms, presented as
//! runtime descriptors whose laws are checked on seeded samples.
//!
//! The crate provides the generic pieces: a variable alphabet with fresh
//! markers, finite substitutions, the list monad and its algebras,
//! signatures with binding arities, signature-generic terms with
//! capture-avoiding substitution, and the fold from syntax into any
//! representation of a signature.

pub mod fold;
pub mod gen;
pub mod harness;
pub mod instance;
pub mod list;
pub mod name;
pub mod scoped;
pub mod signature;
pub mod subst;

pub use fold::{gen_fold, self_representation, FoldError, Representation, ScopedArg};
pub use gen::{sample_rng, Rng};
pub use harness::{
    algebra_check, check_actions_agree, check_equations, check_linearity, check_module_laws,
    check_monad_laws, check_monad_morphism, Counterexample, Equation, LawOutcome, LawReport,
    LawStatus, LinearityCheck, SampleId,
};
pub use instance::{
    maybe_gamma, BindError, Carrier, ConfigError, Letter, ModuleInstance, MonadInstance,
    MonadMorphism,
};
pub use list::{
    concat, list_bind, list_join, list_module, list_monad, list_unit, ListVal, MonoidAlgebra,
};
pub use name::{is_identifier, Name, VarRef};
pub use scoped::{
    gen_rename, gen_scoped, gen_subst, parse_sexpr, scoped_monad, ScopedTerm, TermError,
};
pub use signature::{Arity, Signature, SignatureError};
pub use subst::Subst;
