//! Runtime descriptors for monads, left modules and monad morphisms.
//!
//! A descriptor bundles the operations (unit, bind, mbind) with a seeded
//! generator and an equality predicate. Nothing about the laws is assumed;
//! the [`harness`](crate::harness) checks them on samples.

use std::fmt;
use std::sync::Arc;

use rand::Rng as _;
use thiserror::Error;

use crate::gen::Rng;
use crate::subst::Subst;

/// Anything that can sit in a descriptor: cheap to clone, shareable across
/// harness workers.
pub trait Carrier: Clone + Send + Sync + 'static {}
impl<T: Clone + Send + Sync + 'static> Carrier for T {}

/// Element of a variable alphabet.
pub trait Letter: Carrier + Ord + fmt::Debug {}
impl<T: Carrier + Ord + fmt::Debug> Letter for T {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BindError {
    /// A step budget ran out; the sample is inconclusive, not wrong.
    #[error("fuel exhausted: {0}")]
    Exhausted(String),
    /// The substitution or value violates a precondition (ill-typed image,
    /// sort mismatch, non-normal image).
    #[error("rejected: {0}")]
    Rejected(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("modules are over different monads: `{0}` and `{1}`")]
    BaseMismatch(String, String),
    #[error("`{name}` failed the monad-morphism check: {detail}")]
    NotAMorphism { name: String, detail: String },
    #[error("representation does not match signature: {0}")]
    ArityMismatch(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type GenFn<V, T> = Arc<dyn Fn(&mut Rng, &[V], usize) -> T + Send + Sync>;
pub type ImageGenFn<V, T> = Arc<dyn Fn(&mut Rng, &V, &[V], usize) -> T + Send + Sync>;
pub type UnitFn<V, T> = Arc<dyn Fn(&V) -> T + Send + Sync>;
pub type BindFn<V, T, M> = Arc<dyn Fn(&Subst<V, T>, &M) -> Result<M, BindError> + Send + Sync>;
pub type EqFn<T> = Arc<dyn Fn(&T, &T) -> bool + Send + Sync>;
pub type ShowFn<T> = Arc<dyn Fn(&T) -> String + Send + Sync>;
pub type MapFn<A, B> = Arc<dyn Fn(&A) -> Result<B, BindError> + Send + Sync>;

const DEFAULT_MAX_SIZE: usize = 10;

/// A monad given by unit and bind over an alphabet of letters `V`.
pub struct MonadInstance<V, T> {
    name: String,
    vars: Arc<[V]>,
    unit: UnitFn<V, T>,
    bind: BindFn<V, T, T>,
    gen: GenFn<V, T>,
    gen_image: Option<ImageGenFn<V, T>>,
    eq: EqFn<T>,
    show: ShowFn<T>,
    max_size: usize,
}

impl<V, T> Clone for MonadInstance<V, T> {
    fn clone(&self) -> Self {
        MonadInstance {
            name: self.name.clone(),
            vars: self.vars.clone(),
            unit: self.unit.clone(),
            bind: self.bind.clone(),
            gen: self.gen.clone(),
            gen_image: self.gen_image.clone(),
            eq: self.eq.clone(),
            show: self.show.clone(),
            max_size: self.max_size,
        }
    }
}

impl<V: Letter, T: Carrier + PartialEq + fmt::Debug> MonadInstance<V, T> {
    pub fn new(
        name: impl Into<String>,
        vars: Vec<V>,
        unit: impl Fn(&V) -> T + Send + Sync + 'static,
        bind: impl Fn(&Subst<V, T>, &T) -> Result<T, BindError> + Send + Sync + 'static,
        gen: impl Fn(&mut Rng, &[V], usize) -> T + Send + Sync + 'static,
    ) -> Self {
        MonadInstance {
            name: name.into(),
            vars: vars.into(),
            unit: Arc::new(unit),
            bind: Arc::new(bind),
            gen: Arc::new(gen),
            gen_image: None,
            eq: Arc::new(|a, b| a == b),
            show: Arc::new(|t| format!("{t:?}")),
            max_size: DEFAULT_MAX_SIZE,
        }
    }
}

impl<V: Letter, T: Carrier> MonadInstance<V, T> {
    /// Generator for the image of a particular letter. Typed monads need it
    /// so that random substitutions respect the fibre of each variable.
    pub fn with_image_gen(
        mut self,
        f: impl Fn(&mut Rng, &V, &[V], usize) -> T + Send + Sync + 'static,
    ) -> Self {
        self.gen_image = Some(Arc::new(f));
        self
    }

    pub fn with_eq(mut self, f: impl Fn(&T, &T) -> bool + Send + Sync + 'static) -> Self {
        self.eq = Arc::new(f);
        self
    }

    pub fn with_show(mut self, f: impl Fn(&T) -> String + Send + Sync + 'static) -> Self {
        self.show = Arc::new(f);
        self
    }

    pub fn with_max_size(mut self, n: usize) -> Self {
        self.max_size = n.max(1);
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Replaces the bind while keeping everything else; used to build
    /// mutants that the harness must reject.
    pub fn with_bind(
        mut self,
        bind: impl Fn(&Subst<V, T>, &T) -> Result<T, BindError> + Send + Sync + 'static,
    ) -> Self {
        self.bind = Arc::new(bind);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> &[V] {
        &self.vars
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    pub fn unit(&self, v: &V) -> T {
        (self.unit)(v)
    }

    pub fn bind(&self, s: &Subst<V, T>, t: &T) -> Result<T, BindError> {
        (self.bind)(s, t)
    }

    /// `mu = bind id`: flattens a value whose letters are themselves values.
    /// The outer layer is presented as a value over `V` together with the
    /// substitution naming the inner values.
    pub fn join(&self, outer: &T, inner: &Subst<V, T>) -> Result<T, BindError> {
        self.bind(inner, outer)
    }

    /// The image of `v` under `s`, defaulting to the unit.
    pub fn lookup(&self, s: &Subst<V, T>, v: &V) -> T {
        s.get(v).cloned().unwrap_or_else(|| self.unit(v))
    }

    pub fn equal(&self, a: &T, b: &T) -> bool {
        (self.eq)(a, b)
    }

    pub fn show(&self, t: &T) -> String {
        (self.show)(t)
    }

    pub fn generate(&self, rng: &mut Rng, pool: &[V], size: usize) -> T {
        (self.gen)(rng, pool, size)
    }

    pub fn generate_image(&self, rng: &mut Rng, v: &V, pool: &[V], size: usize) -> T {
        match &self.gen_image {
            Some(g) => g(rng, v, pool, size),
            None => (self.gen)(rng, pool, size),
        }
    }

    /// A random substitution over the instance's own alphabet: each letter
    /// is mapped with probability one half, otherwise left to the unit.
    pub fn random_subst(&self, rng: &mut Rng, size: usize) -> Subst<V, T> {
        let image_size = (size / 2).max(1);
        let mut s = Subst::default();
        for v in self.vars.iter() {
            if rng.gen_bool(0.5) {
                let img = self.generate_image(rng, v, &self.vars, image_size);
                s.insert(v.clone(), img);
            }
        }
        s
    }

    /// The explicit unit substitution `v |-> unit(v)` on every letter.
    pub fn unit_subst(&self) -> Subst<V, T> {
        self.vars
            .iter()
            .map(|v| (v.clone(), self.unit(v)))
            .collect()
    }

    /// Kleisli composite `u |-> bind g (f u)` tabulated over the alphabet
    /// and both domains.
    pub fn kleisli_compose(
        &self,
        f: &Subst<V, T>,
        g: &Subst<V, T>,
    ) -> Result<Subst<V, T>, BindError> {
        let mut letters: Vec<V> = self.vars.to_vec();
        letters.extend(f.keys().cloned());
        letters.extend(g.keys().cloned());
        letters.sort();
        letters.dedup();
        let mut out = Subst::default();
        for v in letters {
            let image = self.bind(g, &self.lookup(f, &v))?;
            out.insert(v, image);
        }
        Ok(out)
    }

    pub fn show_subst(&self, s: &Subst<V, T>) -> String {
        let body: Vec<String> = s
            .iter()
            .map(|(v, t)| format!("{v:?} := {}", self.show(t)))
            .collect();
        format!("{{{}}}", body.join(", "))
    }
}

/// The natural arrow `Maybe . R -> R . Maybe`: the added point goes to the
/// unit at the marker, a value is carried along the alphabet inclusion.
///
/// Markers never occur in values over the unextended alphabet, so the
/// inclusion is the identity on representatives.
pub fn maybe_gamma<V: Letter, T: Carrier>(
    monad: &MonadInstance<V, T>,
    value: Option<&T>,
    marker: &V,
) -> T {
    match value {
        Some(t) => t.clone(),
        None => monad.unit(marker),
    }
}

/// A left module over a monad: a carrier `M` with an `mbind` action.
pub struct ModuleInstance<V, T, M> {
    name: String,
    base: MonadInstance<V, T>,
    gen: GenFn<V, M>,
    mbind: BindFn<V, T, M>,
    eq: EqFn<M>,
    show: ShowFn<M>,
}

impl<V, T> fmt::Debug for MonadInstance<V, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonadInstance")
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

impl<V, T, M> fmt::Debug for ModuleInstance<V, T, M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModuleInstance")
            .field("name", &self.name)
            .field("base", &self.base.name)
            .finish_non_exhaustive()
    }
}

impl<V, T, M> Clone for ModuleInstance<V, T, M> {
    fn clone(&self) -> Self {
        ModuleInstance {
            name: self.name.clone(),
            base: self.base.clone(),
            gen: self.gen.clone(),
            mbind: self.mbind.clone(),
            eq: self.eq.clone(),
            show: self.show.clone(),
        }
    }
}

impl<V: Letter, T: Carrier, M: Carrier + PartialEq + fmt::Debug> ModuleInstance<V, T, M> {
    pub fn new(
        name: impl Into<String>,
        base: &MonadInstance<V, T>,
        gen: impl Fn(&mut Rng, &[V], usize) -> M + Send + Sync + 'static,
        mbind: impl Fn(&Subst<V, T>, &M) -> Result<M, BindError> + Send + Sync + 'static,
    ) -> Self {
        ModuleInstance {
            name: name.into(),
            base: base.clone(),
            gen: Arc::new(gen),
            mbind: Arc::new(mbind),
            eq: Arc::new(|a, b| a == b),
            show: Arc::new(|m| format!("{m:?}")),
        }
    }

    /// The constant module at `w`: every substitution acts as the identity.
    pub fn constant(base: &MonadInstance<V, T>, w: M) -> Self {
        let gen_w = w.clone();
        ModuleInstance::new(
            format!("const({w:?})"),
            base,
            move |_, _, _| gen_w.clone(),
            |_, m| Ok(m.clone()),
        )
    }
}

impl<V: Letter, T: Carrier> ModuleInstance<V, T, T> {
    /// The monad as a left module over itself.
    pub fn tautological(base: &MonadInstance<V, T>) -> Self {
        let gen_base = base.clone();
        let bind_base = base.clone();
        let eq_base = base.clone();
        let show_base = base.clone();
        ModuleInstance {
            name: base.name().to_string(),
            base: base.clone(),
            gen: Arc::new(move |rng, pool, size| gen_base.generate(rng, pool, size)),
            mbind: Arc::new(move |s, t| bind_base.bind(s, t)),
            eq: Arc::new(move |a, b| eq_base.equal(a, b)),
            show: Arc::new(move |t| show_base.show(t)),
        }
    }
}

impl<V: Letter, T: Carrier, M: Carrier> ModuleInstance<V, T, M> {
    /// Assembles a module from already-shared parts.
    pub fn from_parts(
        name: impl Into<String>,
        base: &MonadInstance<V, T>,
        gen: GenFn<V, M>,
        mbind: BindFn<V, T, M>,
        eq: EqFn<M>,
        show: ShowFn<M>,
    ) -> Self {
        ModuleInstance {
            name: name.into(),
            base: base.clone(),
            gen,
            mbind,
            eq,
            show,
        }
    }

    pub fn with_eq(mut self, f: impl Fn(&M, &M) -> bool + Send + Sync + 'static) -> Self {
        self.eq = Arc::new(f);
        self
    }

    pub fn with_show(mut self, f: impl Fn(&M) -> String + Send + Sync + 'static) -> Self {
        self.show = Arc::new(f);
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &MonadInstance<V, T> {
        &self.base
    }

    pub fn mbind(&self, s: &Subst<V, T>, m: &M) -> Result<M, BindError> {
        (self.mbind)(s, m)
    }

    pub fn equal(&self, a: &M, b: &M) -> bool {
        (self.eq)(a, b)
    }

    pub fn show(&self, m: &M) -> String {
        (self.show)(m)
    }

    pub fn generate(&self, rng: &mut Rng, pool: &[V], size: usize) -> M {
        (self.gen)(rng, pool, size)
    }

    pub fn gen_fn(&self) -> &GenFn<V, M> {
        &self.gen
    }

    pub fn mbind_fn(&self) -> &BindFn<V, T, M> {
        &self.mbind
    }

    pub fn eq_fn(&self) -> &EqFn<M> {
        &self.eq
    }

    pub fn show_fn(&self) -> &ShowFn<M> {
        &self.show
    }
}

/// A natural transformation between two monads over the same alphabet,
/// claimed to commute with unit and bind.
pub struct MonadMorphism<V, A, B> {
    name: String,
    source: MonadInstance<V, A>,
    target: MonadInstance<V, B>,
    map: MapFn<A, B>,
}

impl<V, A, B> Clone for MonadMorphism<V, A, B> {
    fn clone(&self) -> Self {
        MonadMorphism {
            name: self.name.clone(),
            source: self.source.clone(),
            target: self.target.clone(),
            map: self.map.clone(),
        }
    }
}

impl<V: Letter, A: Carrier, B: Carrier> MonadMorphism<V, A, B> {
    pub fn new(
        name: impl Into<String>,
        source: &MonadInstance<V, A>,
        target: &MonadInstance<V, B>,
        map: impl Fn(&A) -> Result<B, BindError> + Send + Sync + 'static,
    ) -> Self {
        MonadMorphism {
            name: name.into(),
            source: source.clone(),
            target: target.clone(),
            map: Arc::new(map),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &MonadInstance<V, A> {
        &self.source
    }

    pub fn target(&self) -> &MonadInstance<V, B> {
        &self.target
    }

    pub fn apply(&self, a: &A) -> Result<B, BindError> {
        (self.map)(a)
    }

    pub fn map_fn(&self) -> &MapFn<A, B> {
        &self.map
    }

    /// Pushes a substitution through the morphism: `f . s`.
    pub fn push_subst(&self, s: &Subst<V, A>) -> Result<Subst<V, B>, BindError> {
        s.map_images(|a| self.apply(a))
    }
}

impl<V: Letter, T: Carrier> MonadMorphism<V, T, T> {
    pub fn identity(monad: &MonadInstance<V, T>) -> Self {
        MonadMorphism::new(format!("id({})", monad.name()), monad, monad, |t| {
            Ok(t.clone())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::list::list_monad;

    #[test]
    fn gamma_sends_point_to_unit() {
        let m = list_monad();
        assert_eq!(maybe_gamma(&m, None, &9), vec![9]);
        assert_eq!(maybe_gamma(&m, Some(&vec![1, 2]), &9), vec![1, 2]);
    }

    #[test]
    fn kleisli_compose_covers_both_domains() {
        let m = list_monad();
        let f = Subst::singleton(1, vec![2, 2]);
        let g = Subst::singleton(2, vec![3]);
        let fg = m.kleisli_compose(&f, &g).unwrap();
        assert_eq!(fg.get(&1), Some(&vec![3, 3]));
        assert_eq!(fg.get(&2), Some(&vec![3]));
        assert_eq!(fg.get(&0), Some(&vec![0]));
    }
}
