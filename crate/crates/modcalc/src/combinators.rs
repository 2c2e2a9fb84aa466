//! Module combinators: derivation, products, evaluation and base change.

use std::sync::Arc;

use linmod_core::{
    check_monad_morphism, maybe_gamma, BindError, Carrier, ConfigError, Letter, ModuleInstance,
    MonadInstance, MonadMorphism, Subst,
};

/// Extends `s` to the alphabet with `marker`: the marker goes to its own
/// unit, old letters keep their images.
pub fn lift_subst<V: Letter, T: Carrier>(
    base: &MonadInstance<V, T>,
    s: &Subst<V, T>,
    marker: &V,
) -> Subst<V, T> {
    let mut lifted = s.clone();
    lifted.insert(marker.clone(), maybe_gamma(base, None, marker));
    lifted
}

/// The derived module `M'`: elements of `M` over the alphabet extended
/// with `marker`, acted on by substitutions that fix the marker.
pub fn derive<V: Letter, T: Carrier, M: Carrier>(
    module: &ModuleInstance<V, T, M>,
    marker: V,
) -> ModuleInstance<V, T, M> {
    let base = module.base().clone();
    let gen = module.gen_fn().clone();
    let gen_marker = marker.clone();
    let mbind = module.mbind_fn().clone();
    ModuleInstance::from_parts(
        format!("{}'", module.name()),
        module.base(),
        Arc::new(move |rng, pool: &[V], size| {
            let mut extended = pool.to_vec();
            extended.push(gen_marker.clone());
            gen(rng, &extended, size)
        }),
        Arc::new(move |s, m| mbind(&lift_subst(&base, s, &marker), m)),
        module.eq_fn().clone(),
        module.show_fn().clone(),
    )
}

/// The second derivative `M''` (markers `inner` then `outer`) and the two
/// inclusions `M' -> M''`: the first keeps the slot of `M'` as `inner`,
/// the second moves it to `outer`.
pub struct SecondDerivative<V, T, M> {
    pub module: ModuleInstance<V, T, M>,
    pub first: ModuleInstance<V, T, M>,
    pub second: ModuleInstance<V, T, M>,
    pub inner: V,
    pub outer: V,
}

impl<V: Letter, T: Carrier, M: Carrier> SecondDerivative<V, T, M> {
    pub fn new(module: &ModuleInstance<V, T, M>, inner: V, outer: V) -> Self {
        let first = derive(module, inner.clone());
        let second = derive(&first, outer.clone());
        SecondDerivative {
            module: module.clone(),
            first,
            second,
            inner,
            outer,
        }
    }

    pub fn include_inner(&self, m: &M) -> Result<M, BindError> {
        Ok(m.clone())
    }

    pub fn include_outer(&self, m: &M) -> Result<M, BindError> {
        let rename = Subst::singleton(self.inner.clone(), self.module.base().unit(&self.outer));
        self.module.mbind(&rename, m)
    }
}

/// `M x N` with the componentwise action.
pub fn product<V: Letter, T: Carrier, A: Carrier, B: Carrier>(
    left: &ModuleInstance<V, T, A>,
    right: &ModuleInstance<V, T, B>,
) -> Result<ModuleInstance<V, T, (A, B)>, ConfigError> {
    if left.base().name() != right.base().name() {
        return Err(ConfigError::BaseMismatch(
            left.base().name().to_string(),
            right.base().name().to_string(),
        ));
    }
    let (gl, gr) = (left.gen_fn().clone(), right.gen_fn().clone());
    let (ml, mr) = (left.mbind_fn().clone(), right.mbind_fn().clone());
    let (el, er) = (left.eq_fn().clone(), right.eq_fn().clone());
    let (sl, sr) = (left.show_fn().clone(), right.show_fn().clone());
    Ok(ModuleInstance::from_parts(
        format!("{} x {}", left.name(), right.name()),
        left.base(),
        Arc::new(move |rng, pool, size| (gl(rng, pool, size), gr(rng, pool, size))),
        Arc::new(move |s, (a, b)| Ok((ml(s, a)?, mr(s, b)?))),
        Arc::new(move |(a1, b1), (a2, b2)| el(a1, a2) && er(b1, b2)),
        Arc::new(move |(a, b)| format!("({}, {})", sl(a), sr(b))),
    ))
}

/// Source of the evaluation morphism: `M' x R`.
pub fn eval_source<V: Letter, T: Carrier + PartialEq + std::fmt::Debug, M: Carrier>(
    module: &ModuleInstance<V, T, M>,
    marker: V,
) -> ModuleInstance<V, T, (M, T)> {
    product(
        &derive(module, marker),
        &ModuleInstance::tautological(module.base()),
    )
    .expect("a module and its base share the monad")
}

/// `eval(m', r)`: the slot `marker` of `m'` replaced by `r`.
pub fn eval_morphism<V: Letter, T: Carrier, M: Carrier>(
    module: &ModuleInstance<V, T, M>,
    marker: V,
) -> impl Fn(&(M, T)) -> Result<M, BindError> + Send + Sync + Clone {
    let mbind = module.mbind_fn().clone();
    move |(m, r)| mbind(&Subst::singleton(marker.clone(), r.clone()), m)
}

/// Samples used to validate a morphism before a base change.
pub const BASE_CHANGE_SAMPLES: usize = 500;

/// `f*M`: the B-module `M` seen over `A` through `f`. The morphism is first
/// checked on samples; a failing law is a configuration error.
pub fn base_change<V: Letter, A: Carrier, B: Carrier, M: Carrier>(
    f: &MonadMorphism<V, A, B>,
    module: &ModuleInstance<V, B, M>,
    seed: u64,
) -> Result<ModuleInstance<V, A, M>, ConfigError> {
    if f.target().name() != module.base().name() {
        return Err(ConfigError::BaseMismatch(
            f.target().name().to_string(),
            module.base().name().to_string(),
        ));
    }
    let report = check_monad_morphism(f, BASE_CHANGE_SAMPLES, seed);
    if !report.all_hold() {
        let detail = match report.first_counterexample() {
            Some(c) => format!("{}: {} vs {}", c.input, c.lhs, c.rhs),
            None => report
                .laws
                .iter()
                .find(|l| !l.holds())
                .map_or_else(String::new, |l| l.to_string()),
        };
        return Err(ConfigError::NotAMorphism {
            name: f.name().to_string(),
            detail,
        });
    }
    let push = f.clone();
    let mbind = module.mbind_fn().clone();
    Ok(ModuleInstance::from_parts(
        format!("{}*({})", f.name(), module.name()),
        f.source(),
        module.gen_fn().clone(),
        Arc::new(move |s, m| mbind(&push.push_subst(s)?, m)),
        module.eq_fn().clone(),
        module.show_fn().clone(),
    ))
}
