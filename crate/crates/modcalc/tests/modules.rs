use linmod_core::{
    check_actions_agree, check_linearity, check_module_laws, check_monad_laws, ConfigError,
    ModuleInstance, MonadMorphism, Name, Subst,
};
use linmod_lambda::{lc_monad, lc_subst, nf_monad, nf_projection, parse_term, LcTerm, NfTerm};
use linmod_modcalc::*;

const SAMPLES: usize = 1000;
const FUEL: u64 = 2000;

fn star() -> Name {
    Name::fresh(0)
}

fn lc() -> ModuleInstance<Name, LcTerm, LcTerm> {
    ModuleInstance::tautological(&lc_monad())
}

fn p(s: &str) -> LcTerm {
    parse_term(s).unwrap()
}

#[test]
fn derived_lc_examples() {
    let d = derive(&lc(), star());
    let t = LcTerm::app(LcTerm::var(star()), p("y"));
    assert_eq!(d.mbind(&Subst::identity(), &t).unwrap(), t);
    let s = Subst::singleton(Name::new("y"), p("\\z. z"));
    assert_eq!(
        d.mbind(&s, &t).unwrap(),
        LcTerm::app(LcTerm::var(star()), p("\\z. z"))
    );
    // the slot is not substitutable through the derived action
    let s = Subst::singleton(star(), p("y"));
    assert_eq!(d.mbind(&s, &t).unwrap(), t);
}

#[test]
fn derived_constant_module_is_constant() {
    let c = ModuleInstance::constant(&lc_monad(), 7u8);
    let d = derive(&c, star());
    let s = Subst::singleton(Name::new("x"), p("y"));
    assert_eq!(d.mbind(&s, &7).unwrap(), 7);
    assert!(check_module_laws(&d, 100, 0).all_hold());
}

#[test]
fn derived_module_laws() {
    let r = check_module_laws(&derive(&lc(), star()), SAMPLES, 1);
    assert!(r.all_hold(), "{r}");
    let r = check_module_laws(&derive(&derive(&lc(), star()), Name::fresh(1)), SAMPLES, 2);
    assert!(r.all_hold(), "{r}");
}

#[test]
fn second_derivative_inclusions() {
    let sd = SecondDerivative::new(&lc(), Name::fresh(0), Name::fresh(1));
    let slot = LcTerm::var(Name::fresh(0));
    assert_eq!(
        sd.include_inner(&slot).unwrap(),
        LcTerm::var(Name::fresh(0))
    );
    assert_eq!(
        sd.include_outer(&slot).unwrap(),
        LcTerm::var(Name::fresh(1))
    );
    assert_eq!(sd.include_inner(&p("x")).unwrap(), p("x"));
    assert_eq!(sd.include_outer(&p("x")).unwrap(), p("x"));

    let r = check_linearity(&sd.first, &sd.second, |m| sd.include_inner(m), SAMPLES, 3);
    assert!(r.all_hold(), "{r}");
    let r = check_linearity(&sd.first, &sd.second, |m| sd.include_outer(m), SAMPLES, 4);
    assert!(r.all_hold(), "{r}");
}

#[test]
fn products() {
    let prod = product(&derive(&lc(), star()), &lc()).unwrap();
    let r = check_module_laws(&prod, SAMPLES, 5);
    assert!(r.all_hold(), "{r}");

    let pair = product(&lc(), &lc()).unwrap();
    let s = Subst::singleton(Name::new("x"), p("y"));
    assert_eq!(
        pair.mbind(&s, &(p("x"), p("\\a. a x"))).unwrap(),
        (lc_subst(&s, &p("x")), lc_subst(&s, &p("\\a. a x")))
    );

    let with_terminal = product(&lc(), &ModuleInstance::constant(&lc_monad(), ())).unwrap();
    assert_eq!(
        with_terminal.mbind(&s, &(p("x"), ())).unwrap(),
        (p("y"), ())
    );
    assert!(check_module_laws(&with_terminal, 200, 6).all_hold());
}

#[test]
fn product_rejects_different_bases() {
    let other = ModuleInstance::tautological(&lc_monad().with_name("lc-copy"));
    let err = product(&lc(), &other).unwrap_err();
    assert!(matches!(err, ConfigError::BaseMismatch(_, _)));
}

#[test]
fn evaluation_morphism() {
    let eval = eval_morphism(&lc(), star());
    assert_eq!(
        eval(&(LcTerm::var(star()), p("\\a. a"))).unwrap(),
        p("\\a. a")
    );
    assert_eq!(eval(&(p("x"), p("\\a. a"))).unwrap(), p("x"));
    let src = eval_source(&lc(), star());
    let r = check_linearity(&src, &lc(), eval, SAMPLES, 7);
    assert!(r.all_hold(), "{r}");
}

#[test]
fn base_change_along_identity() {
    let id = MonadMorphism::identity(&lc_monad());
    let changed = base_change(&id, &lc(), 0).unwrap();
    let r = check_actions_agree(&changed, &lc(), SAMPLES, 8);
    assert!(r.all_hold(), "{r}");
}

fn nf_module() -> ModuleInstance<Name, NfTerm, NfTerm> {
    ModuleInstance::tautological(&nf_monad(FUEL))
}

#[test]
fn base_change_along_normalization() {
    let f = nf_projection(FUEL);
    let changed = base_change(&f, &nf_module(), 0).unwrap();
    let r = check_module_laws(&changed, SAMPLES, 9);
    assert!(r.all_hold(), "{r}");

    // f is LC-linear from LC to f*NF
    let r = check_linearity(&lc(), &changed, |t| f.apply(t), SAMPLES, 10);
    assert!(r.all_hold(), "{r}");
}

#[test]
fn base_change_commutes_with_derivation_and_products() {
    let f = nf_projection(FUEL);
    let m = nf_module();
    let a = derive(&base_change(&f, &m, 0).unwrap(), star());
    let b = base_change(&f, &derive(&m, star()), 0).unwrap();
    let r = check_actions_agree(&a, &b, SAMPLES, 11);
    assert!(r.all_hold(), "{r}");

    let a = product(
        &base_change(&f, &m, 0).unwrap(),
        &base_change(&f, &m, 0).unwrap(),
    )
    .unwrap();
    let b = base_change(&f, &product(&m, &m).unwrap(), 0).unwrap();
    let r = check_actions_agree(&a, &b, SAMPLES, 12);
    assert!(r.all_hold(), "{r}");
}

#[test]
fn base_change_rejects_non_morphisms() {
    // erasing every term to `x` does not commute with units
    let erase = MonadMorphism::new("erase", &lc_monad(), &lc_monad(), |_: &LcTerm| {
        Ok(LcTerm::free("x"))
    });
    let err = base_change(&erase, &lc(), 0).unwrap_err();
    assert!(matches!(err, ConfigError::NotAMorphism { .. }), "{err}");
}

#[test]
fn pt_monad_laws() {
    let r = check_monad_laws(&pt_monad(), SAMPLES, 13);
    assert!(r.all_hold(), "{r}");
}

#[test]
fn n_is_not_linear() {
    let r = check_n_linearity(SAMPLES, 0);
    let c = r.first_counterexample().expect("n must fail linearity");
    assert_eq!(c.input, "var(x*x)");
    assert_eq!(c.lhs, "x+x+(x+x)");
    assert_eq!(c.rhs, "x*x+x*x");
    assert!(r.to_string().contains("var(x*x)"));
}

#[test]
fn n_fails_on_random_samples_too() {
    let module = ModuleInstance::tautological(&pt_monad());
    let r = check_linearity(
        &module,
        &module,
        |t: &PtTerm| Ok(n_transform(t)),
        SAMPLES,
        14,
    );
    assert!(r.first_counterexample().is_some(), "{r}");
}
