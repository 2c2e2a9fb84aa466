//! Representations of a signature and the initial fold out of syntax.

use std::sync::Arc;

use thiserror::Error;

use crate::instance::{BindError, Carrier, ConfigError, MonadInstance};
use crate::name::{Name, VarRef};
use crate::scoped::{ScopedTerm, TermError};
use crate::signature::{Arity, Signature};
use crate::subst::Subst;

/// One argument of an operator, evaluated in the target: `value` lives over
/// the outer alphabet extended with `binders` (outermost first).
#[derive(Clone, Debug, PartialEq)]
pub struct ScopedArg<T> {
    pub binders: Vec<Name>,
    pub value: T,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoldError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Bind(#[from] BindError),
}

pub type OpHandler<T> = Arc<dyn Fn(&[ScopedArg<T>]) -> Result<T, FoldError> + Send + Sync>;

/// A target monad together with an interpretation of every operator.
pub struct Representation<T> {
    target: MonadInstance<Name, T>,
    ops: Vec<(String, Arity, OpHandler<T>)>,
}

impl<T> Clone for Representation<T> {
    fn clone(&self) -> Self {
        Representation {
            target: self.target.clone(),
            ops: self.ops.clone(),
        }
    }
}

impl<T: Carrier> Representation<T> {
    pub fn new(target: &MonadInstance<Name, T>) -> Self {
        Representation {
            target: target.clone(),
            ops: Vec::new(),
        }
    }

    pub fn op(
        mut self,
        name: &str,
        arity: Arity,
        handler: impl Fn(&[ScopedArg<T>]) -> Result<T, FoldError> + Send + Sync + 'static,
    ) -> Self {
        self.ops.push((name.to_string(), arity, Arc::new(handler)));
        self
    }

    pub fn target(&self) -> &MonadInstance<Name, T> {
        &self.target
    }

    /// Checks that operator `i` of the representation interprets operator
    /// `i` of `sig` with the same name and arity.
    pub fn matches(&self, sig: &Signature) -> Result<(), ConfigError> {
        if self.ops.len() != sig.len() {
            return Err(ConfigError::ArityMismatch(format!(
                "signature has {} operators, representation has {}",
                sig.len(),
                self.ops.len()
            )));
        }
        for (i, (name, arity, _)) in self.ops.iter().enumerate() {
            let (sig_name, sig_arity) = sig.op(i).unwrap();
            if sig_name != name || sig_arity != arity {
                return Err(ConfigError::ArityMismatch(format!(
                    "operator {i}: signature has {sig_name}: {sig_arity}, representation has {name}: {arity}"
                )));
            }
        }
        Ok(())
    }
}

/// Folds a term into a representation.
///
/// Free names go through `env` (defaulting to the target unit). Each bound
/// slot is opened as a fresh marker and reaches the target as the unit at
/// that marker; the operator handler receives the markers its argument
/// binds.
pub fn gen_fold<T: Carrier>(
    sig: &Signature,
    rep: &Representation<T>,
    t: &ScopedTerm,
    env: &Subst<Name, T>,
) -> Result<T, FoldError> {
    rep.matches(sig)?;
    t.check(sig, 0)?;
    let base = t
        .free_names()
        .iter()
        .filter_map(Name::fresh_index)
        .max()
        .map_or(0, |k| k + 1);
    let mut scope = Vec::new();
    fold_at(sig, rep, t, env, base, &mut scope)
}

fn fold_at<T: Carrier>(
    sig: &Signature,
    rep: &Representation<T>,
    t: &ScopedTerm,
    env: &Subst<Name, T>,
    base: u32,
    scope: &mut Vec<Name>,
) -> Result<T, FoldError> {
    match t {
        ScopedTerm::Var(VarRef::Free(n)) => Ok(rep.target.lookup(env, n)),
        ScopedTerm::Var(VarRef::Bound(i)) => {
            let marker = &scope[scope.len() - 1 - *i as usize];
            Ok(rep.target.unit(marker))
        }
        ScopedTerm::Op(op, args) => {
            let binders = sig.arity(*op).unwrap().binders();
            let mut folded = Vec::with_capacity(args.len());
            for (arg, b) in args.iter().zip(binders) {
                let markers: Vec<Name> = (0..*b)
                    .map(|k| Name::fresh(base + (scope.len() as u32) + k))
                    .collect();
                scope.extend(markers.iter().cloned());
                let value = fold_at(sig, rep, arg, env, base, scope);
                scope.truncate(scope.len() - markers.len());
                folded.push(ScopedArg {
                    binders: markers,
                    value: value?,
                });
            }
            (rep.ops[*op].2)(&folded)
        }
    }
}

/// The syntax as a representation of its own signature: each operator
/// rebuilds itself, closing over the markers of its arguments.
pub fn self_representation(
    sig: &Signature,
    target: &MonadInstance<Name, ScopedTerm>,
) -> Representation<ScopedTerm> {
    let mut rep = Representation::new(target);
    for (i, (name, arity)) in sig.iter().enumerate() {
        let sig = sig.clone();
        rep = rep.op(name, arity.clone(), move |args| {
            let args = args
                .iter()
                .map(|a| a.value.close(&sig, &a.binders))
                .collect::<Result<_, _>>()?;
            Ok(ScopedTerm::Op(i, args))
        });
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::sample_rng;
    use crate::scoped::{gen_scoped, parse_sexpr, scoped_monad};

    fn pool() -> Vec<Name> {
        ["x", "y", "z"].iter().map(|s| Name::new(s)).collect()
    }

    #[test]
    fn self_representation_folds_to_identity() {
        let sig = Signature::parse("app: [0,0]\nabs: [1]\nlet2: [0,2]\nk: []").unwrap();
        let target = scoped_monad(&sig, pool());
        let rep = self_representation(&sig, &target);
        for i in 0..500 {
            let mut rng = sample_rng(1, i);
            let t = gen_scoped(&mut rng, &sig, &pool(), 0, 16);
            assert_eq!(gen_fold(&sig, &rep, &t, &Subst::identity()).unwrap(), t);
        }
        let nested = parse_sexpr(&sig, "(abs (abs (app #1 #0)))").unwrap();
        assert_eq!(
            gen_fold(&sig, &rep, &nested, &Subst::identity()).unwrap(),
            nested
        );
    }

    fn sum_target() -> MonadInstance<Name, i64> {
        // Only the unit matters for folding; this is not a lawful monad.
        MonadInstance::new("int", vec![], |_| 0, |_, t| Ok(*t), |_, _, _| 0)
    }

    #[test]
    fn fold_into_integers_sums_a_tree() {
        let sig = Signature::parse("one: []\ntwo: []\nadd: [0,0]").unwrap();
        let rep = Representation::new(&sum_target())
            .op("one", Arity::new(vec![]), |_| Ok(1))
            .op("two", Arity::new(vec![]), |_| Ok(2))
            .op("add", Arity::new(vec![0, 0]), |a| {
                Ok(a[0].value + a[1].value)
            });
        let t = parse_sexpr(&sig, "(add (two) (add x (one)))").unwrap();
        let env = Subst::singleton(Name::new("x"), 10);
        assert_eq!(gen_fold(&sig, &rep, &t, &env).unwrap(), 13);
    }

    #[test]
    fn arity_mismatch_is_a_configuration_error() {
        let sig = Signature::parse("one: []\nadd: [0,0]").unwrap();
        let rep = Representation::new(&sum_target())
            .op("one", Arity::new(vec![]), |_| Ok(1))
            .op("add", Arity::new(vec![0]), |a| Ok(a[0].value));
        let t = parse_sexpr(&sig, "(one)").unwrap();
        assert!(matches!(
            gen_fold(&sig, &rep, &t, &Subst::identity()),
            Err(FoldError::Config(ConfigError::ArityMismatch(_)))
        ));
    }

    #[test]
    fn handlers_see_their_binders() {
        let sig = Signature::lambda();
        let target = sum_target();
        let rep = Representation::new(&target)
            .op("app", Arity::new(vec![0, 0]), |a| {
                Ok(a[0].value + a[1].value)
            })
            .op("abs", Arity::new(vec![1]), |a| {
                assert_eq!(a[0].binders.len(), 1);
                Ok(100 + a[0].value)
            });
        let t = parse_sexpr(&sig, "(abs (app #0 (abs #1)))").unwrap();
        assert_eq!(gen_fold(&sig, &rep, &t, &Subst::identity()).unwrap(), 200);
    }
}
