//! Randomized law checking.
//!
//! Each check draws `samples` seeded samples, evaluates both sides of every
//! commuting square, and records the first counterexample per law. Samples
//! whose evaluation runs out of fuel are skipped and counted. Samples run in
//! parallel, but every sample owns its RNG stream and results are merged in
//! index order, so a report is a function of `(instance, samples, seed)`.

use std::fmt;

use rand::Rng as _;
use rayon::prelude::*;

use crate::gen::{sample_rng, sample_size, Rng};
use crate::instance::{BindError, Carrier, Letter, ModuleInstance, MonadInstance, MonadMorphism};
use crate::list::MonoidAlgebra;
use crate::subst::Subst;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleId {
    Probe(usize),
    Random(usize),
}

impl fmt::Display for SampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampleId::Probe(i) => write!(f, "probe {i}"),
            SampleId::Random(i) => write!(f, "sample {i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub sample: SampleId,
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LawStatus {
    Holds,
    Fails(Counterexample),
    Inconclusive(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawOutcome {
    pub law: String,
    pub checked: usize,
    pub skipped: usize,
    pub status: LawStatus,
}

impl LawOutcome {
    pub fn holds(&self) -> bool {
        matches!(self.status, LawStatus::Holds)
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match &self.status {
            LawStatus::Fails(c) => Some(c),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub suite: String,
    pub instance: String,
    pub samples: usize,
    pub seed: u64,
    pub laws: Vec<LawOutcome>,
}

impl LawReport {
    pub fn all_hold(&self) -> bool {
        !self.laws.is_empty() && self.laws.iter().all(LawOutcome::holds)
    }

    pub fn law(&self, name: &str) -> Option<&LawOutcome> {
        self.laws.iter().find(|l| l.law == name)
    }

    pub fn first_counterexample(&self) -> Option<&Counterexample> {
        self.laws.iter().find_map(LawOutcome::counterexample)
    }

    pub fn named(mut self, instance: impl Into<String>) -> Self {
        self.instance = instance.into();
        self
    }

    pub fn skipped(&self) -> usize {
        self.laws.iter().map(|l| l.skipped).max().unwrap_or(0)
    }
}

impl fmt::Display for LawOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            LawStatus::Holds => write!(
                f,
                "law {}: holds ({} checked, {} skipped)",
                self.law, self.checked, self.skipped
            ),
            LawStatus::Inconclusive(why) => {
                write!(f, "law {}: inconclusive ({why})", self.law)
            }
            LawStatus::Fails(c) => {
                writeln!(f, "law {}: fails at {}", self.law, c.sample)?;
                writeln!(f, "  input: {}", c.input)?;
                writeln!(f, "  lhs: {}", c.lhs)?;
                write!(f, "  rhs: {}", c.rhs)
            }
        }
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite: {}", self.suite)?;
        writeln!(f, "instance: {}", self.instance)?;
        writeln!(f, "samples: {}", self.samples)?;
        writeln!(f, "seed: {}", self.seed)?;
        for law in &self.laws {
            writeln!(f, "{law}")?;
        }
        Ok(())
    }
}

enum Verdict {
    Holds,
    Skipped,
    Fails {
        input: String,
        lhs: String,
        rhs: String,
    },
    Rejected(String),
}

fn compare<T>(
    lhs: Result<T, BindError>,
    rhs: Result<T, BindError>,
    eq: impl Fn(&T, &T) -> bool,
    show: impl Fn(&T) -> String,
    input: impl FnOnce() -> String,
) -> Verdict {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => {
            if eq(&l, &r) {
                Verdict::Holds
            } else {
                Verdict::Fails {
                    input: input(),
                    lhs: show(&l),
                    rhs: show(&r),
                }
            }
        }
        (Err(BindError::Rejected(why)), _) | (_, Err(BindError::Rejected(why))) => {
            Verdict::Rejected(why)
        }
        _ => Verdict::Skipped,
    }
}

/// Conjunction of verdicts over several instances of one law in a sample.
fn all_of(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
    let mut skipped = false;
    for v in verdicts {
        match v {
            Verdict::Holds => {}
            Verdict::Skipped => skipped = true,
            other => return other,
        }
    }
    if skipped {
        Verdict::Skipped
    } else {
        Verdict::Holds
    }
}

fn run_samples(
    laws: &[&str],
    samples: usize,
    seed: u64,
    probes: usize,
    probe: impl Fn(usize) -> Vec<Verdict> + Sync,
    sample: impl Fn(&mut Rng) -> Vec<Verdict> + Sync,
) -> Vec<LawOutcome> {
    let mut results: Vec<(SampleId, Vec<Verdict>)> = (0..probes)
        .map(|i| (SampleId::Probe(i), probe(i)))
        .collect();
    let random: Vec<(SampleId, Vec<Verdict>)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i as u64);
            (SampleId::Random(i), sample(&mut rng))
        })
        .collect();
    results.extend(random);

    laws.iter()
        .enumerate()
        .map(|(j, law)| {
            let mut checked = 0;
            let mut skipped = 0;
            let mut status = None;
            let mut rejected = None;
            for (id, verdicts) in &results {
                match &verdicts[j] {
                    Verdict::Holds => checked += 1,
                    Verdict::Skipped => skipped += 1,
                    Verdict::Rejected(why) => {
                        if rejected.is_none() {
                            rejected = Some(format!("{id}: {why}"));
                        }
                    }
                    Verdict::Fails { input, lhs, rhs } => {
                        checked += 1;
                        if status.is_none() {
                            status = Some(LawStatus::Fails(Counterexample {
                                sample: *id,
                                input: input.clone(),
                                lhs: lhs.clone(),
                                rhs: rhs.clone(),
                            }));
                        }
                    }
                }
            }
            let status = match (status, rejected) {
                (Some(fail), _) => fail,
                (None, Some(why)) => LawStatus::Inconclusive(format!("generator failure at {why}")),
                (None, None) if checked == 0 => {
                    LawStatus::Inconclusive("no sample could be evaluated".to_string())
                }
                (None, None) => LawStatus::Holds,
            };
            LawOutcome {
                law: law.to_string(),
                checked,
                skipped,
                status,
            }
        })
        .collect()
}

fn report(
    suite: &str,
    instance: &str,
    samples: usize,
    seed: u64,
    laws: Vec<LawOutcome>,
) -> LawReport {
    LawReport {
        suite: suite.to_string(),
        instance: instance.to_string(),
        samples,
        seed,
        laws,
    }
}

/// Checks associativity and both unit laws of bind.
pub fn check_monad_laws<V: Letter, T: Carrier>(
    m: &MonadInstance<V, T>,
    samples: usize,
    seed: u64,
) -> LawReport {
    let laws = ["bind-bind", "bind-unit", "unit-bind"];
    let eq = |a: &T, b: &T| m.equal(a, b);
    let show = |t: &T| m.show(t);
    let outcomes = run_samples(
        &laws,
        samples,
        seed,
        0,
        |_| Vec::new(),
        |rng| {
            let size = sample_size(rng, m.max_size());
            let x = m.generate(rng, m.vars(), size);
            let f = m.random_subst(rng, size);
            let g = m.random_subst(rng, size);

            let assoc = compare(
                m.bind(&f, &x).and_then(|y| m.bind(&g, &y)),
                m.kleisli_compose(&f, &g).and_then(|fg| m.bind(&fg, &x)),
                eq,
                show,
                || {
                    format!(
                        "x = {}; f = {}; g = {}",
                        m.show(&x),
                        m.show_subst(&f),
                        m.show_subst(&g)
                    )
                },
            );
            let left_unit = all_of(m.vars().iter().map(|v| {
                compare(
                    m.bind(&f, &m.unit(v)),
                    Ok(m.lookup(&f, v)),
                    eq,
                    show,
                    || format!("v = {v:?}; f = {}", m.show_subst(&f)),
                )
            }));
            let right_unit = compare(m.bind(&m.unit_subst(), &x), Ok(x.clone()), eq, show, || {
                format!("x = {}", m.show(&x))
            });
            vec![assoc, left_unit, right_unit]
        },
    );
    report("monad", m.name(), samples, seed, outcomes)
}

/// Checks `mbind g . mbind f = mbind (bind g . f)` and `mbind unit = id`.
pub fn check_module_laws<V: Letter, T: Carrier, M: Carrier>(
    module: &ModuleInstance<V, T, M>,
    samples: usize,
    seed: u64,
) -> LawReport {
    let laws = ["mbind-mbind", "mbind-unit"];
    let base = module.base();
    let eq = |a: &M, b: &M| module.equal(a, b);
    let show = |t: &M| module.show(t);
    let outcomes = run_samples(
        &laws,
        samples,
        seed,
        0,
        |_| Vec::new(),
        |rng| {
            let size = sample_size(rng, base.max_size());
            let x = module.generate(rng, base.vars(), size);
            let f = base.random_subst(rng, size);
            let g = base.random_subst(rng, size);
            let assoc = compare(
                module.mbind(&f, &x).and_then(|y| module.mbind(&g, &y)),
                base.kleisli_compose(&f, &g)
                    .and_then(|fg| module.mbind(&fg, &x)),
                eq,
                show,
                || {
                    format!(
                        "x = {}; f = {}; g = {}",
                        module.show(&x),
                        base.show_subst(&f),
                        base.show_subst(&g)
                    )
                },
            );
            let unit = compare(
                module.mbind(&base.unit_subst(), &x),
                Ok(x.clone()),
                eq,
                show,
                || format!("x = {}", module.show(&x)),
            );
            vec![assoc, unit]
        },
    );
    report("module", module.name(), samples, seed, outcomes)
}

type RenderFn<'a, V, T, A> = Box<dyn Fn(&Subst<V, T>, &A) -> String + Sync + 'a>;

/// Checks that a carrier map `tau: M -> N` commutes with the actions:
/// `tau (mbind s x) = mbind s (tau x)`.
///
/// Fixed probes run before the random samples and are reported as
/// `probe k`.
pub struct LinearityCheck<'a, V, T, A, B, F> {
    law: String,
    src: &'a ModuleInstance<V, T, A>,
    dst: &'a ModuleInstance<V, T, B>,
    tau: F,
    probes: Vec<(Subst<V, T>, A)>,
    render: Option<RenderFn<'a, V, T, A>>,
}

impl<'a, V, T, A, B, F> LinearityCheck<'a, V, T, A, B, F>
where
    V: Letter,
    T: Carrier,
    A: Carrier,
    B: Carrier,
    F: Fn(&A) -> Result<B, BindError> + Sync,
{
    pub fn new(
        law: impl Into<String>,
        src: &'a ModuleInstance<V, T, A>,
        dst: &'a ModuleInstance<V, T, B>,
        tau: F,
    ) -> Self {
        LinearityCheck {
            law: law.into(),
            src,
            dst,
            tau,
            probes: Vec::new(),
            render: None,
        }
    }

    pub fn probe(mut self, s: Subst<V, T>, x: A) -> Self {
        self.probes.push((s, x));
        self
    }

    /// Custom rendering of the `(substitution, element)` input of a
    /// counterexample.
    pub fn render_input(mut self, f: impl Fn(&Subst<V, T>, &A) -> String + Sync + 'a) -> Self {
        self.render = Some(Box::new(f));
        self
    }

    fn verdict(&self, s: &Subst<V, T>, x: &A) -> Verdict {
        let lhs = self.src.mbind(s, x).and_then(|y| (self.tau)(&y));
        let rhs = (self.tau)(x).and_then(|tx| self.dst.mbind(s, &tx));
        compare(
            lhs,
            rhs,
            |a, b| self.dst.equal(a, b),
            |b| self.dst.show(b),
            || match &self.render {
                Some(r) => r(s, x),
                None => format!(
                    "s = {}; x = {}",
                    self.src.base().show_subst(s),
                    self.src.show(x)
                ),
            },
        )
    }

    pub fn run(&self, samples: usize, seed: u64) -> LawReport {
        let base = self.src.base();
        let outcomes = run_samples(
            &[self.law.as_str()],
            samples,
            seed,
            self.probes.len(),
            |i| {
                let (s, x) = &self.probes[i];
                vec![self.verdict(s, x)]
            },
            |rng| {
                let size = sample_size(rng, base.max_size());
                let x = self.src.generate(rng, base.vars(), size);
                let s = base.random_subst(rng, size);
                vec![self.verdict(&s, &x)]
            },
        );
        let instance = format!("{} -> {}", self.src.name(), self.dst.name());
        report("linearity", &instance, samples, seed, outcomes)
    }
}

pub fn check_linearity<V, T, A, B, F>(
    src: &ModuleInstance<V, T, A>,
    dst: &ModuleInstance<V, T, B>,
    tau: F,
    samples: usize,
    seed: u64,
) -> LawReport
where
    V: Letter,
    T: Carrier,
    A: Carrier,
    B: Carrier,
    F: Fn(&A) -> Result<B, BindError> + Sync,
{
    LinearityCheck::new("linearity", src, dst, tau).run(samples, seed)
}

/// Checks that `f` commutes with unit and bind.
pub fn check_monad_morphism<V: Letter, A: Carrier, B: Carrier>(
    f: &MonadMorphism<V, A, B>,
    samples: usize,
    seed: u64,
) -> LawReport {
    let laws = ["unit", "bind"];
    let src = f.source();
    let dst = f.target();
    let eq = |a: &B, b: &B| dst.equal(a, b);
    let show = |b: &B| dst.show(b);
    let outcomes = run_samples(
        &laws,
        samples,
        seed,
        0,
        |_| Vec::new(),
        |rng| {
            let size = sample_size(rng, src.max_size());
            let x = src.generate(rng, src.vars(), size);
            let s = src.random_subst(rng, size);
            let unit = all_of(src.vars().iter().map(|v| {
                compare(f.apply(&src.unit(v)), Ok(dst.unit(v)), eq, show, || {
                    format!("v = {v:?}")
                })
            }));
            let bind = compare(
                src.bind(&s, &x).and_then(|y| f.apply(&y)),
                f.push_subst(&s)
                    .and_then(|fs| f.apply(&x).and_then(|fx| dst.bind(&fs, &fx))),
                eq,
                show,
                || format!("x = {}; s = {}", src.show(&x), src.show_subst(&s)),
            );
            vec![unit, bind]
        },
    );
    report("monad-morphism", f.name(), samples, seed, outcomes)
}

/// Checks that two modules with the same carrier act identically.
pub fn check_actions_agree<V: Letter, T: Carrier, M: Carrier>(
    left: &ModuleInstance<V, T, M>,
    right: &ModuleInstance<V, T, M>,
    samples: usize,
    seed: u64,
) -> LawReport {
    let base = left.base();
    let outcomes = run_samples(
        &["pointwise"],
        samples,
        seed,
        0,
        |_| Vec::new(),
        |rng| {
            let size = sample_size(rng, base.max_size());
            let x = left.generate(rng, base.vars(), size);
            let s = base.random_subst(rng, size);
            vec![compare(
                left.mbind(&s, &x),
                right.mbind(&s, &x),
                |a, b| left.equal(a, b),
                |m| left.show(m),
                || format!("s = {}; x = {}", base.show_subst(&s), left.show(&x)),
            )]
        },
    );
    let instance = format!("{} vs {}", left.name(), right.name());
    report("agreement", &instance, samples, seed, outcomes)
}

/// Checks the two algebra squares for a monoid seen as a list algebra:
/// `rho [a] = a` and `rho (map rho xss) = rho (concat xss)`.
pub fn algebra_check<A: Carrier>(alg: &MonoidAlgebra<A>, samples: usize, seed: u64) -> LawReport {
    let laws = ["unit", "associativity"];
    let eq = |a: &A, b: &A| alg.equal(a, b);
    let show = |a: &A| alg.show(a);
    let outcomes = run_samples(
        &laws,
        samples,
        seed,
        0,
        |_| Vec::new(),
        |rng| {
            let a = alg.generate(rng);
            let outer = rng.gen_range(0..4);
            let xss: Vec<Vec<A>> = (0..outer)
                .map(|_| {
                    let inner = rng.gen_range(0..4);
                    (0..inner).map(|_| alg.generate(rng)).collect()
                })
                .collect();
            let unit = compare(
                Ok(alg.action(std::slice::from_ref(&a))),
                Ok(a.clone()),
                eq,
                show,
                || format!("[{}]", alg.show(&a)),
            );
            let inner_products: Vec<A> = xss.iter().map(|xs| alg.action(xs)).collect();
            let flat: Vec<A> = xss.iter().flatten().cloned().collect();
            let assoc = compare(
                Ok(alg.action(&inner_products)),
                Ok(alg.action(&flat)),
                eq,
                show,
                || alg.show_nested(&xss),
            );
            vec![unit, assoc]
        },
    );
    report("algebra", alg.name(), samples, seed, outcomes)
}

/// One instance of an equation `lhs = rhs`, with a rendering of the input
/// that produced it.
pub struct Equation<T> {
    pub lhs: Result<T, BindError>,
    pub rhs: Result<T, BindError>,
    pub input: String,
}

impl<T> Equation<T> {
    pub fn new(
        lhs: Result<T, BindError>,
        rhs: Result<T, BindError>,
        input: impl Into<String>,
    ) -> Self {
        Equation {
            lhs,
            rhs,
            input: input.into(),
        }
    }
}

/// Checks a family of equations. `sample` returns, for every law in
/// `laws`, the equations drawn for it in one sample (all must hold; an
/// empty list counts as skipped).
#[allow(clippy::too_many_arguments)]
pub fn check_equations<T>(
    suite: &str,
    instance: &str,
    laws: &[&str],
    samples: usize,
    seed: u64,
    eq: impl Fn(&T, &T) -> bool + Sync,
    show: impl Fn(&T) -> String + Sync,
    sample: impl Fn(&mut Rng) -> Vec<Vec<Equation<T>>> + Sync,
) -> LawReport {
    let outcomes = run_samples(
        laws,
        samples,
        seed,
        0,
        |_| Vec::new(),
        |rng| {
            let drawn = sample(rng);
            assert_eq!(drawn.len(), laws.len(), "one equation list per law");
            drawn
                .into_iter()
                .map(|eqs| {
                    if eqs.is_empty() {
                        return Verdict::Skipped;
                    }
                    all_of(eqs.into_iter().map(|e| {
                        let input = e.input;
                        compare(e.lhs, e.rhs, &eq, &show, || input)
                    }))
                })
                .collect()
        },
    );
    report(suite, instance, samples, seed, outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::list::{list_monad, MonoidAlgebra};

    #[test]
    fn reports_are_deterministic() {
        let m = list_monad();
        let a = check_monad_laws(&m, 200, 11);
        let b = check_monad_laws(&m, 200, 11);
        assert_eq!(a, b);
    }

    #[test]
    fn single_sample_passes_on_lawful_instance() {
        let r = check_monad_laws(&list_monad(), 1, 0);
        assert!(r.all_hold(), "{r}");
    }

    #[test]
    fn zero_samples_is_inconclusive() {
        let r = check_monad_laws(&list_monad(), 0, 0);
        assert!(!r.all_hold());
        assert!(matches!(r.laws[0].status, LawStatus::Inconclusive(_)));
    }

    #[test]
    fn exhausted_samples_are_skipped() {
        let m = list_monad().with_bind(|_, _| Err(BindError::Exhausted("test".into())));
        let r = check_monad_laws(&m, 10, 0);
        let law = r.law("unit-bind").unwrap();
        assert_eq!(law.skipped, 10);
        assert!(matches!(law.status, LawStatus::Inconclusive(_)));
    }

    #[test]
    fn rejected_samples_make_report_inconclusive() {
        let m = list_monad().with_bind(|_, _| Err(BindError::Rejected("bad image".into())));
        let r = check_monad_laws(&m, 5, 0);
        assert!(
            matches!(r.laws[0].status, LawStatus::Inconclusive(ref w) if w.contains("bad image"))
        );
    }

    #[test]
    fn one_point_algebra_passes() {
        let r = algebra_check(&MonoidAlgebra::one_point(), 100, 0);
        assert!(r.all_hold(), "{r}");
    }
}
