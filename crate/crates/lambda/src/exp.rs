//! Normal forms as an exponential monad: substitution with
//! renormalization, abstraction `exp_abs` and its inverse `exp_app1`, and
//! the initial fold `iota_fold` into any exponential structure.

use std::sync::Arc;

use linmod_core::{
    check_equations, BindError, Carrier, ConfigError, Equation, FoldError, LawReport,
    MonadInstance, MonadMorphism, Name, Representation, ScopedArg, Signature, Subst, VarRef,
};

use crate::instances::{gen_nf, LC_POOL};
use crate::reduce::{normalize, Exhausted, Fuel, NfTerm};
use crate::term::{lc_shift, lc_subst, LcTerm};

/// `normalize(lc_subst(s, t))`.
pub fn nf_bind(s: &Subst<Name, NfTerm>, t: &NfTerm, fuel: &mut Fuel) -> Result<NfTerm, Exhausted> {
    let s: Subst<Name, LcTerm> = s
        .iter()
        .map(|(k, v)| (k.clone(), v.term().clone()))
        .collect();
    normalize(&lc_subst(&s, t.term()), fuel)
}

/// `app1 t = app(shift t, 0)`, one scope deeper.
///
/// # Panics
///
/// If the renormalization does not finish within `size(t) + 1` steps,
/// which cannot happen on a normal input.
pub fn exp_app1(t: &NfTerm) -> NfTerm {
    let applied = LcTerm::app(lc_shift(t.term()), LcTerm::bound(0));
    let mut fuel = Fuel::new(t.term().size() as u64 + 1);
    match normalize(&applied, &mut fuel) {
        Ok(nf) => nf,
        Err(e) => panic!("internal defect: app1 of a normal form did not renormalize ({e})"),
    }
}

/// `λ. t`, η-contracted at the root when that forms a redex.
pub fn exp_abs(t: &NfTerm) -> NfTerm {
    let abs = LcTerm::abs(t.term().clone());
    if let LcTerm::App(u, arg) = t.term() {
        if **arg == LcTerm::Var(VarRef::Bound(0)) && !u.uses_bound(0) {
            return NfTerm::trusted(u.unshifted(0));
        }
    }
    NfTerm::trusted(abs)
}

type ScopeFn<T> = Arc<dyn Fn(&T, &Name) -> Result<T, BindError> + Send + Sync>;

/// A monad with an abstraction and its inverse. The extended scope is the
/// alphabet plus a marker name: `abs(t, m)` binds `m` in `t`, and
/// `app1(t, m)` applies `t` to `m`.
pub struct ExpStructure<T> {
    monad: MonadInstance<Name, T>,
    abs: ScopeFn<T>,
    app1: ScopeFn<T>,
}

impl<T> Clone for ExpStructure<T> {
    fn clone(&self) -> Self {
        ExpStructure {
            monad: self.monad.clone(),
            abs: self.abs.clone(),
            app1: self.app1.clone(),
        }
    }
}

impl<T: Carrier> ExpStructure<T> {
    pub fn new(
        monad: MonadInstance<Name, T>,
        abs: impl Fn(&T, &Name) -> Result<T, BindError> + Send + Sync + 'static,
        app1: impl Fn(&T, &Name) -> Result<T, BindError> + Send + Sync + 'static,
    ) -> Self {
        ExpStructure {
            monad,
            abs: Arc::new(abs),
            app1: Arc::new(app1),
        }
    }

    pub fn monad(&self) -> &MonadInstance<Name, T> {
        &self.monad
    }

    pub fn abs(&self, t: &T, marker: &Name) -> Result<T, BindError> {
        (self.abs)(t, marker)
    }

    pub fn app1(&self, t: &T, marker: &Name) -> Result<T, BindError> {
        (self.app1)(t, marker)
    }

    /// Checks `abs . app1 = id` and `app1 . abs = id` on samples.
    pub fn check_laws(&self, samples: usize, seed: u64) -> LawReport {
        let m = &self.monad;
        let marker = Name::fresh(0);
        let mut extended = m.vars().to_vec();
        extended.push(marker.clone());
        check_equations(
            "exponential",
            m.name(),
            &["abs-app1", "app1-abs"],
            samples,
            seed,
            |a, b| m.equal(a, b),
            |t| m.show(t),
            |rng| {
                let size = linmod_core::gen::sample_size(rng, m.max_size());
                let t = m.generate(rng, m.vars(), size);
                let u = m.generate(rng, &extended, size);
                vec![
                    vec![Equation::new(
                        self.app1(&t, &marker).and_then(|x| self.abs(&x, &marker)),
                        Ok(t.clone()),
                        format!("t = {}", m.show(&t)),
                    )],
                    vec![Equation::new(
                        self.abs(&u, &marker).and_then(|x| self.app1(&x, &marker)),
                        Ok(u.clone()),
                        format!("u = {}", m.show(&u)),
                    )],
                ]
            },
        )
    }

    /// Like [`ExpStructure::new`], but refuses structures whose
    /// abstraction is not inverse to `app1` on samples.
    pub fn validated(self, samples: usize, seed: u64) -> Result<Self, ConfigError> {
        let report = self.check_laws(samples, seed);
        if report.all_hold() {
            return Ok(self);
        }
        let detail = match report.first_counterexample() {
            Some(c) => format!("{}: {} vs {}", c.input, c.lhs, c.rhs),
            None => "laws inconclusive".to_string(),
        };
        Err(ConfigError::NotAMorphism {
            name: format!("{} is not exponential", self.monad.name()),
            detail,
        })
    }
}

fn exhausted(e: Exhausted) -> BindError {
    BindError::Exhausted(e.to_string())
}

/// Normal forms with renormalizing bind; each bind runs on a fresh budget
/// of `fuel_steps`.
pub fn nf_monad(fuel_steps: u64) -> MonadInstance<Name, NfTerm> {
    let pool: Vec<Name> = LC_POOL.iter().map(|s| Name::new(s)).collect();
    MonadInstance::new(
        "nf",
        pool,
        |v: &Name| NfTerm::var(v.clone()),
        move |s, t| nf_bind(s, t, &mut Fuel::new(fuel_steps)).map_err(exhausted),
        gen_nf,
    )
    .with_show(|t: &NfTerm| t.to_string())
    .with_max_size(8)
}

/// The quotient map `LC -> NF`, normalizing on a fresh budget per term.
pub fn nf_projection(fuel_steps: u64) -> MonadMorphism<Name, LcTerm, NfTerm> {
    MonadMorphism::new(
        "normalize",
        &crate::instances::lc_monad(),
        &nf_monad(fuel_steps),
        move |t| normalize(t, &mut Fuel::new(fuel_steps)).map_err(exhausted),
    )
}

/// The exponential structure on normal forms.
pub fn nf_exp(fuel_steps: u64) -> ExpStructure<NfTerm> {
    ExpStructure::new(
        nf_monad(fuel_steps),
        |t, m| Ok(exp_abs(&NfTerm::trusted(t.term().close(m)))),
        |t, m| Ok(NfTerm::trusted(exp_app1(t).term().open(m))),
    )
}

/// The syntactic monad with `abs` and `app1` taken literally. It is not
/// exponential, so [`ExpStructure::validated`] rejects it.
pub fn lc_exp(monad: MonadInstance<Name, LcTerm>) -> ExpStructure<LcTerm> {
    ExpStructure::new(
        monad,
        |t, m| Ok(LcTerm::abs(t.close(m))),
        |t, m| Ok(LcTerm::app(t.clone(), LcTerm::var(m.clone()))),
    )
}

/// The initial morphism from syntax into an exponential monad:
/// variables go through `env`, `abs` to the structure's abstraction and
/// `app x y` to `app1(iota x)` with its extra slot substituted by `iota y`.
pub fn iota_fold<T: Carrier>(
    exp: &ExpStructure<T>,
    t: &LcTerm,
    env: &Subst<Name, T>,
) -> Result<T, BindError> {
    let base = t
        .free_names()
        .iter()
        .filter_map(Name::fresh_index)
        .max()
        .map_or(0, |k| k + 1);
    let mut scope = Vec::new();
    iota_at(exp, t, env, base, &mut scope)
}

fn iota_at<T: Carrier>(
    exp: &ExpStructure<T>,
    t: &LcTerm,
    env: &Subst<Name, T>,
    base: u32,
    scope: &mut Vec<Name>,
) -> Result<T, BindError> {
    let m = exp.monad();
    match t {
        LcTerm::Var(VarRef::Free(n)) => Ok(m.lookup(env, n)),
        LcTerm::Var(VarRef::Bound(i)) => Ok(m.unit(&scope[scope.len() - 1 - *i as usize])),
        LcTerm::Abs(body) => {
            let marker = Name::fresh(base + scope.len() as u32);
            scope.push(marker.clone());
            let inner = iota_at(exp, body, env, base, scope);
            scope.pop();
            exp.abs(&inner?, &marker)
        }
        LcTerm::App(f, a) => {
            let fx = iota_at(exp, f, env, base, scope)?;
            let ay = iota_at(exp, a, env, base, scope)?;
            let marker = Name::fresh(base + scope.len() as u32);
            let body = exp.app1(&fx, &marker)?;
            m.bind(&Subst::singleton(marker, ay), &body)
        }
    }
}

/// Normal forms as a representation of the app/abs signature, for the
/// generic fold.
pub fn nf_representation(fuel_steps: u64) -> Representation<NfTerm> {
    let sig = Signature::lambda();
    let (app, abs) = (sig.op(0).unwrap().1.clone(), sig.op(1).unwrap().1.clone());
    Representation::new(&nf_monad(fuel_steps))
        .op("app", app, move |args: &[ScopedArg<NfTerm>]| {
            let t = LcTerm::app(args[0].value.term().clone(), args[1].value.term().clone());
            normalize(&t, &mut Fuel::new(fuel_steps)).map_err(|e| FoldError::Bind(exhausted(e)))
        })
        .op("abs", abs, |args: &[ScopedArg<NfTerm>]| {
            let arg = &args[0];
            Ok(exp_abs(&NfTerm::trusted(
                arg.value.term().close(&arg.binders[0]),
            )))
        })
}
