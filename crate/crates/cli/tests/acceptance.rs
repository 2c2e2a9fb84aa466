//! End-to-end acceptance suite. Every criterion prints one PASS/FAIL line;
//! the target exits non-zero if any criterion fails.

use std::process::Command;

use linmod_core::gen::sample_size;
use linmod_core::{
    check_actions_agree, check_equations, check_linearity, check_module_laws, check_monad_laws,
    check_monad_morphism, concat, gen_fold, gen_scoped, list_module, list_monad, sample_rng,
    scoped_monad, self_representation, BindError, Equation, FoldError, LawReport, ModuleInstance,
    MonadMorphism, Name, Rng, Signature, Subst,
};
use linmod_lambda::*;
use linmod_modcalc::*;
use linmod_typed::*;
use rand::Rng as _;

const SAMPLES: usize = 1000;
const FUEL: u64 = 10_000;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn pool() -> Vec<Name> {
    LC_POOL.iter().map(|s| Name::new(s)).collect()
}

fn p(s: &str) -> LcTerm {
    parse_term(s).unwrap()
}

fn star() -> Name {
    Name::fresh(0)
}

fn lc() -> ModuleInstance<Name, LcTerm, LcTerm> {
    ModuleInstance::tautological(&lc_monad())
}

fn require(report: LawReport) -> Result<usize, String> {
    if report.all_hold() {
        Ok(report.laws.len())
    } else {
        Err(report.to_string())
    }
}

fn require_all(reports: Vec<LawReport>) -> Verdict {
    let mut laws = 0;
    for r in reports {
        laws += require(r)?;
    }
    Ok(format!("{laws} laws hold"))
}

fn norm(t: &LcTerm) -> Result<NfTerm, BindError> {
    normalize(t, &mut Fuel::new(FUEL)).map_err(|e| BindError::Exhausted(e.to_string()))
}

fn monad_laws() -> Verdict {
    let mut reports = vec![
        check_monad_laws(&lc_monad(), SAMPLES, 1),
        check_monad_laws(&nf_monad(FUEL), SAMPLES, 1),
        check_monad_laws(&list_monad(), SAMPLES, 1),
        check_monad_laws(&pt_monad(), SAMPLES, 1),
        check_monad_laws(&stlc_monad(), SAMPLES, 1),
        check_monad_laws(&stlc_nf_monad(FUEL), SAMPLES, 1),
        check_monad_laws(&tlist_monad(), SAMPLES, 1),
    ];
    for r in &reports {
        if r.laws.iter().any(|l| l.checked == 0) {
            return Err(format!("no sample checked:\n{r}"));
        }
    }
    // substitutes twice: only the identity substitution survives this
    let broken = lc_monad()
        .with_name("lc (broken bind)")
        .with_bind(|s, t| Ok(lc_subst(s, &lc_subst(s, t))));
    let mutant = check_monad_laws(&broken, SAMPLES, 1);
    if mutant.first_counterexample().is_none() {
        return Err(format!("broken bind not caught:\n{mutant}"));
    }
    let summary = require_all(std::mem::take(&mut reports))?;
    Ok(format!("{summary}; broken bind caught"))
}

fn module_laws() -> Verdict {
    let f = nf_projection(FUEL);
    let nf = ModuleInstance::tautological(&nf_monad(FUEL));
    let changed = base_change(&f, &nf, 0).map_err(|e| e.to_string())?;
    let stlc = stlc_monad();
    let mut reports = vec![
        check_module_laws(&lc(), SAMPLES, 2),
        check_module_laws(&derive(&lc(), star()), SAMPLES, 2),
        check_module_laws(&eval_source(&lc(), star()), SAMPLES, 2),
        check_module_laws(&changed, SAMPLES, 2),
        check_module_laws(&ModuleInstance::constant(&lc_monad(), ()), SAMPLES, 2),
        check_module_laws(&shifted_module(1), SAMPLES, 2),
    ];
    for (s, t) in suite_types() {
        reports.push(check_module_laws(&delta_module(&stlc, s, t), SAMPLES, 2));
    }
    require_all(reports)
}

fn pt_witness() -> Result<(), String> {
    let x = PtTerm::var("x");
    let s = Subst::singleton(Name::new("x"), PtTerm::times(x.clone(), x.clone()));
    let lhs = n_transform(&pt_bind(&s, &x));
    let rhs = pt_bind(&s, &n_transform(&x));
    let want_lhs = parse_pt("(x+x)+(x+x)").unwrap();
    let want_rhs = parse_pt("(x*x)+(x*x)").unwrap();
    if lhs != want_lhs || rhs != want_rhs {
        return Err(format!("witness gave {lhs} vs {rhs}"));
    }
    Ok(())
}

fn linearity() -> Verdict {
    let pair = product(&lc(), &lc()).map_err(|e| e.to_string())?;
    let app = check_linearity(
        &pair,
        &lc(),
        |(a, b)| Ok(LcTerm::app(a.clone(), b.clone())),
        SAMPLES,
        3,
    );
    let abs = check_linearity(
        &derive(&lc(), star()),
        &lc(),
        |t| Ok(LcTerm::abs(t.clone())),
        SAMPLES,
        3,
    );
    let lists = product(&list_module(), &list_module()).map_err(|e| e.to_string())?;
    let cat = check_linearity(&lists, &list_module(), |xy| Ok(concat(xy)), SAMPLES, 3);
    let eval = check_linearity(
        &eval_source(&lc(), star()),
        &lc(),
        eval_morphism(&lc(), star()),
        SAMPLES,
        3,
    );
    let sd = SecondDerivative::new(&lc(), Name::fresh(0), Name::fresh(1));
    let inner = check_linearity(&sd.first, &sd.second, |m| sd.include_inner(m), SAMPLES, 3);
    let outer = check_linearity(&sd.first, &sd.second, |m| sd.include_outer(m), SAMPLES, 3);
    let summary = require_all(vec![
        app,
        abs,
        stlc_linearity_suite(SAMPLES, 3, FUEL),
        tlist_linearity_suite(SAMPLES, 3),
        cat,
        eval,
        inner,
        outer,
    ])?;

    let n = check_n_linearity(SAMPLES, 0);
    let Some(c) = n.first_counterexample() else {
        return Err(format!("n passed linearity:\n{n}"));
    };
    if c.input != "var(x*x)" {
        return Err(format!("unexpected first counterexample:\n{n}"));
    }
    pt_witness()?;
    Ok(format!("{summary}; n fails at {}", c.input))
}

fn exponential_laws() -> Verdict {
    let r = nf_exp(FUEL).check_laws(SAMPLES, 4);
    let n = require(r)?;
    Ok(format!("{n} laws hold"))
}

fn beta_diagram() -> Verdict {
    let pool = pool();
    let r = check_equations(
        "beta",
        "lc",
        &["app-abs-subst"],
        SAMPLES,
        5,
        |a: &NfTerm, b: &NfTerm| a == b,
        NfTerm::to_string,
        |rng| {
            let size = sample_size(rng, 12);
            let u = gen_lc_at(rng, &pool, size, 1);
            let v = gen_lc(rng, &pool, size);
            let redex = LcTerm::app(LcTerm::abs(u.clone()), v.clone());
            vec![vec![Equation::new(
                norm(&redex),
                norm(&lc_subst0(&u, &v)),
                format!("u = {}; v = {v}", u.debruijn()),
            )]]
        },
    );
    let law = &r.laws[0];
    let sufficient = law.checked as f64 / SAMPLES as f64;
    require(r.clone())?;
    if sufficient < 0.95 {
        return Err(format!(
            "only {:.1}% of pairs fuel-sufficient",
            sufficient * 100.0
        ));
    }
    Ok(format!(
        "{} pairs agree, {:.1}% fuel-sufficient",
        law.checked,
        sufficient * 100.0
    ))
}

fn iota() -> Verdict {
    let exp = nf_exp(FUEL);
    let target = exp.monad().clone();
    let iota = MonadMorphism::new("iota", &lc_monad(), &target, move |t: &LcTerm| {
        iota_fold(&exp, t, &Subst::identity())
    });
    let pool = pool();
    let mut agreed = 0;
    for i in 0..SAMPLES as u64 {
        let mut rng = sample_rng(6, i);
        let size = sample_size(&mut rng, 14);
        let t = gen_lc(&mut rng, &pool, size);
        let Ok(n) = norm(&t) else { continue };
        match iota.apply(&t) {
            Ok(folded) if folded == n => agreed += 1,
            Ok(folded) => return Err(format!("iota({t}) = {folded}, normalize gives {n}")),
            Err(e) => return Err(format!("iota({t}) failed on a normalizing term: {e}")),
        }
    }
    let square = check_monad_morphism(&iota, SAMPLES, 6);
    require(square)?;
    Ok(format!(
        "{agreed} normalizing terms agree; morphism squares hold"
    ))
}

fn initial_roundtrip() -> Verdict {
    let sig = Signature::lambda();
    let pool = pool();
    let target = scoped_monad(&sig, pool.clone());
    let rep = self_representation(&sig, &target);
    for i in 0..SAMPLES as u64 {
        let mut rng = sample_rng(7, i);
        let t = gen_lc(&mut rng, &pool, 14);
        if from_scoped(&to_scoped(&t)).as_ref() != Ok(&t) {
            return Err(format!("LcTerm roundtrip failed on {t}"));
        }
        let s = gen_scoped(&mut rng, &sig, &pool, 0, 14);
        let back = from_scoped(&s).map_err(|e| e.to_string())?;
        if to_scoped(&back) != s {
            return Err(format!(
                "ScopedTerm roundtrip failed on {}",
                s.display(&sig)
            ));
        }
        let folded =
            gen_fold(&sig, &rep, &s, &Subst::identity()).map_err(|e: FoldError| e.to_string())?;
        if folded != s {
            return Err(format!("self fold changed {}", s.display(&sig)));
        }
    }
    Ok(format!(
        "{SAMPLES} terms each way; self fold is the identity"
    ))
}

fn stlc() -> Verdict {
    let pool = stlc_pool();
    let (mut steps, mut normalized) = (0, 0);
    for i in 0..SAMPLES as u64 {
        let mut rng = sample_rng(8, i);
        let t = gen_stlc(&mut rng, &pool, 30);
        let ty = type_of(&[], &t).map_err(|e| format!("generated ill-typed {t}: {e}"))?;
        let mut cur = t.clone();
        while let Some(next) = stlc_beta_step(&cur).or_else(|| stlc_eta_step(&cur)) {
            if type_of(&[], &next).as_ref() != Ok(&ty) {
                return Err(format!("{cur} -> {next} changed the type"));
            }
            steps += 1;
            cur = next;
        }
        if t.size() <= 30 {
            stlc_normalize(&t, &mut Fuel::new(FUEL)).map_err(|e| format!("{t}: {e}"))?;
            normalized += 1;
        }
    }
    Ok(format!(
        "{steps} steps preserve types; {normalized} terms normalize"
    ))
}

fn reduction_chain(rng: &mut Rng, t: &LcTerm, steps: usize) -> (LcTerm, usize) {
    let mut cur = t.clone();
    let mut taken = 0;
    for _ in 0..steps {
        let next = one_step_reducts(&cur);
        if next.is_empty() {
            break;
        }
        cur = next[rng.gen_range(0..next.len())].clone();
        taken += 1;
    }
    (cur, taken)
}

fn preorder() -> Verdict {
    let pool = pool();
    for i in 0..200u64 {
        let mut rng = sample_rng(9, i);
        let a = gen_lc(&mut rng, &pool, 10);
        if preorder_leq(&a, &a, 0) != LeqOutcome::Related(0) {
            return Err(format!("{a} not reflexive"));
        }
    }
    if preorder_leq(&p("(\\x.x) y"), &p("y"), 1) != LeqOutcome::Related(1) {
        return Err("(\\x.x) y <= y not found at depth 1".into());
    }
    if preorder_leq(&p("y"), &p("(\\x.x) y"), 20).is_related() {
        return Err("y <= (\\x.x) y reported related".into());
    }
    let mut chains = 0;
    for i in 0..200u64 {
        let mut rng = sample_rng(10, i);
        let a = gen_lc(&mut rng, &pool, 10);
        let (b, d1) = reduction_chain(&mut rng, &a, 1);
        let (c, d2) = reduction_chain(&mut rng, &b, 1);
        if d1 + d2 == 2 {
            chains += 1;
        }
        let ab = preorder_leq(&a, &b, d1).is_related();
        let bc = preorder_leq(&b, &c, d2).is_related();
        if !(ab && bc && preorder_leq(&a, &c, d1 + d2).is_related()) {
            return Err(format!("transitivity fails on {a} -> {b} -> {c}"));
        }
    }
    Ok(format!(
        "reflexive on 200; {chains} two-step chains compose"
    ))
}

fn base_change_laws() -> Verdict {
    let err = |e: linmod_core::ConfigError| e.to_string();
    let id = MonadMorphism::identity(&lc_monad());
    let same = check_actions_agree(
        &base_change(&id, &lc(), 0).map_err(err)?,
        &lc(),
        SAMPLES,
        11,
    );

    let f = nf_projection(FUEL);
    let m = ModuleInstance::tautological(&nf_monad(FUEL));
    let changed = base_change(&f, &m, 0).map_err(err)?;
    let a = derive(&changed, star());
    let b = base_change(&f, &derive(&m, star()), 0).map_err(err)?;
    let derivation = check_actions_agree(&a, &b, SAMPLES, 11);
    let a = product(&changed, &changed).map_err(err)?;
    let b = base_change(&f, &product(&m, &m).map_err(err)?, 0).map_err(err)?;
    let products = check_actions_agree(&a, &b, SAMPLES, 11);
    require_all(vec![same, derivation, products])
}

fn linmod(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_linmod"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn cli_golden() -> Verdict {
    let cases: [(&[&str], i32, &str); 3] = [
        (&["normalize", "(\\x. x) y"], 0, "y\n"),
        (&["equiv", "\\x. y x", "y"], 0, "equivalent\n"),
        (
            &[
                "laws",
                "--suite",
                "linearity",
                "--instance",
                "pt",
                "--samples",
                "1000",
                "--seed",
                "0",
            ],
            0,
            include_str!("golden/laws_linearity_pt.txt"),
        ),
    ];
    for (args, code, stdout) in cases {
        let (got_code, got) = linmod(args);
        if got_code != code || got != stdout {
            return Err(format!("linmod {args:?}: exit {got_code}, output:\n{got}"));
        }
    }
    let (_, report) = linmod(cases[2].0);
    if !report.contains("var(x*x)") {
        return Err("pt report lacks the counterexample".into());
    }
    Ok("3 golden outputs match".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("monad laws", monad_laws),
        ("module laws", module_laws),
        ("linearity", linearity),
        ("exponential laws", exponential_laws),
        ("beta diagram", beta_diagram),
        ("iota fold", iota),
        ("initial representation", initial_roundtrip),
        ("simply typed", stlc),
        ("reduction preorder", preorder),
        ("base change", base_change_laws),
        ("cli golden", cli_golden),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
