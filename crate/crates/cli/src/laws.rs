//! The `laws` subcommand: suites over the shipped instances.

use clap::ValueEnum;
use linmod_core::{
    algebra_check, check_linearity, check_module_laws, check_monad_laws, concat, list_module,
    list_monad, ConfigError, LawReport, ModuleInstance, MonoidAlgebra, Name,
};
use linmod_lambda::{lc_monad, nf_monad, LcTerm};
use linmod_modcalc::{
    check_n_linearity, derive, eval_morphism, eval_source, product, pt_monad, SecondDerivative,
};
use linmod_typed::{
    delta_module, shifted_module, stlc_linearity_suite, stlc_monad, stlc_nf_monad, suite_types,
    tlist_fiber, tlist_linearity_suite, tlist_monad, ListSort, MAX_SORT,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Monad,
    Module,
    Linearity,
    Algebra,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Instance {
    Lc,
    Nf,
    List,
    Pt,
    Stlc,
    Tlist,
    DerivedLc,
    ProductLc,
}

pub(crate) struct SuiteOutcome {
    pub passed: bool,
    pub text: String,
}

fn merge(
    suite: &str,
    instance: &str,
    samples: usize,
    seed: u64,
    reports: Vec<LawReport>,
) -> LawReport {
    LawReport {
        suite: suite.to_string(),
        instance: instance.to_string(),
        samples,
        seed,
        laws: reports.into_iter().flat_map(|r| r.laws).collect(),
    }
}

fn holds(report: LawReport) -> SuiteOutcome {
    let passed = report.all_hold();
    let verdict = if passed {
        "all laws hold"
    } else {
        "some laws fail"
    };
    SuiteOutcome {
        passed,
        text: format!("{report}result: {verdict}\n"),
    }
}

fn star() -> Name {
    Name::fresh(0)
}

fn lc() -> ModuleInstance<Name, LcTerm, LcTerm> {
    ModuleInstance::tautological(&lc_monad())
}

fn lc_pair() -> ModuleInstance<Name, LcTerm, (LcTerm, LcTerm)> {
    product(&lc(), &lc()).expect("same base")
}

fn value_name(v: impl ValueEnum) -> String {
    v.to_possible_value()
        .map(|p| p.get_name().to_string())
        .unwrap_or_default()
}

fn unsupported(suite: Suite, instance: Instance) -> ConfigError {
    ConfigError::Unsupported(format!(
        "suite `{}` is not available for instance `{}`",
        value_name(suite),
        value_name(instance),
    ))
}

pub(crate) fn run_suite(
    suite: Suite,
    instance: Instance,
    samples: usize,
    seed: u64,
    fuel: u64,
) -> Result<SuiteOutcome, ConfigError> {
    use Instance::*;
    let n = samples;
    Ok(match (suite, instance) {
        (Suite::Monad, Lc) => holds(check_monad_laws(&lc_monad(), n, seed)),
        (Suite::Monad, Nf) => holds(check_monad_laws(&nf_monad(fuel), n, seed)),
        (Suite::Monad, List) => holds(check_monad_laws(&list_monad(), n, seed)),
        (Suite::Monad, Pt) => holds(check_monad_laws(&pt_monad(), n, seed)),
        (Suite::Monad, Stlc) => holds(merge(
            "monad",
            "stlc, stlc-nf",
            n,
            seed,
            vec![
                check_monad_laws(&stlc_monad(), n, seed),
                check_monad_laws(&stlc_nf_monad(fuel), n, seed),
            ],
        )),
        (Suite::Monad, Tlist) => holds(check_monad_laws(&tlist_monad(), n, seed)),

        (Suite::Module, Lc) => holds(check_module_laws(&lc(), n, seed)),
        (Suite::Module, Nf) => holds(check_module_laws(
            &ModuleInstance::tautological(&nf_monad(fuel)),
            n,
            seed,
        )),
        (Suite::Module, List) => holds(check_module_laws(&list_module(), n, seed)),
        (Suite::Module, Pt) => holds(check_module_laws(
            &ModuleInstance::tautological(&pt_monad()),
            n,
            seed,
        )),
        (Suite::Module, Stlc) => {
            let base = stlc_monad();
            let reports = suite_types()
                .into_iter()
                .map(|(s, t)| {
                    let m = delta_module(&base, s, t);
                    let r = check_module_laws(&m, n, seed);
                    prefix(r, m.name())
                })
                .collect();
            holds(merge("module", "stlc delta modules", n, seed, reports))
        }
        (Suite::Module, Tlist) => {
            let mut reports: Vec<LawReport> = (0..=MAX_SORT)
                .map(|k| {
                    let m = tlist_fiber(ListSort(k));
                    prefix(check_module_laws(&m, n, seed), m.name())
                })
                .collect();
            let shifted = shifted_module(1);
            reports.push(prefix(check_module_laws(&shifted, n, seed), shifted.name()));
            holds(merge("module", "tlist fibers", n, seed, reports))
        }
        (Suite::Module, DerivedLc) => holds(check_module_laws(&derive(&lc(), star()), n, seed)),
        (Suite::Module, ProductLc) => {
            holds(check_module_laws(&eval_source(&lc(), star()), n, seed))
        }

        (Suite::Linearity, Lc) => {
            let app = check_linearity(
                &lc_pair(),
                &lc(),
                |(a, b)| Ok(LcTerm::app(a.clone(), b.clone())),
                n,
                seed,
            );
            let abs = check_linearity(
                &derive(&lc(), star()),
                &lc(),
                |t| Ok(LcTerm::abs(t.clone())),
                n,
                seed,
            );
            holds(merge(
                "linearity",
                "lc",
                n,
                seed,
                vec![prefix(app, "app"), prefix(abs, "abs")],
            ))
        }
        (Suite::Linearity, List) => {
            let pair = product(&list_module(), &list_module()).expect("same base");
            let r = check_linearity(&pair, &list_module(), |p| Ok(concat(p)), n, seed);
            holds(prefix(r, "concat"))
        }
        (Suite::Linearity, Pt) => {
            let report = check_n_linearity(n, seed);
            let passed = report.first_counterexample().is_some();
            let verdict = if passed {
                "counterexample found: n is not linear"
            } else {
                "no counterexample found"
            };
            SuiteOutcome {
                passed,
                text: format!("{report}result: {verdict}\n"),
            }
        }
        (Suite::Linearity, Stlc) => holds(stlc_linearity_suite(n, seed, fuel)),
        (Suite::Linearity, Tlist) => holds(tlist_linearity_suite(n, seed)),
        (Suite::Linearity, DerivedLc) => {
            let sd = SecondDerivative::new(&lc(), Name::fresh(0), Name::fresh(1));
            let inner = check_linearity(&sd.first, &sd.second, |m| sd.include_inner(m), n, seed);
            let outer = check_linearity(&sd.first, &sd.second, |m| sd.include_outer(m), n, seed);
            let eval = check_linearity(
                &eval_source(&lc(), star()),
                &lc(),
                eval_morphism(&lc(), star()),
                n,
                seed,
            );
            holds(merge(
                "linearity",
                "derived-lc",
                n,
                seed,
                vec![
                    prefix(inner, "include-inner"),
                    prefix(outer, "include-outer"),
                    prefix(eval, "eval"),
                ],
            ))
        }
        (Suite::Linearity, ProductLc) => {
            let eval = check_linearity(
                &eval_source(&lc(), star()),
                &lc(),
                eval_morphism(&lc(), star()),
                n,
                seed,
            );
            holds(prefix(eval, "eval"))
        }

        (Suite::Algebra, List) => holds(merge(
            "algebra",
            "list",
            n,
            seed,
            vec![
                prefix(algebra_check(&MonoidAlgebra::integer_sum(), n, seed), "sum"),
                prefix(
                    algebra_check(&MonoidAlgebra::one_point(), n, seed),
                    "one-point",
                ),
            ],
        )),

        (suite, instance) => return Err(unsupported(suite, instance)),
    })
}

/// Qualifies every law name in `r` with `tag`.
fn prefix(mut r: LawReport, tag: &str) -> LawReport {
    for law in &mut r.laws {
        law.law = format!("{tag}/{}", law.law);
    }
    r
}
