use linmod_cli::{run, run_args, EXIT_FUEL, EXIT_NEGATIVE, EXIT_OK, EXIT_PARSE, EXIT_USAGE};

#[test]
fn golden_examples() {
    let out = run_args(&["normalize", "(\\x. x) y"]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "y\n"));
    let out = run_args(&["equiv", "\\x. y x", "y"]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "equivalent\n"));
    let out = run_args(&[
        "laws",
        "--suite",
        "linearity",
        "--instance",
        "pt",
        "--samples",
        "1000",
        "--seed",
        "0",
    ]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, include_str!("golden/laws_linearity_pt.txt"));
    assert!(out.stdout.contains("var(x*x)"));
}

#[test]
fn parse_and_stdin() {
    let out = run_args(&["parse", "λx. λy. x (y z)"]);
    assert_eq!(out.stdout, "\\v0. \\v1. v0 (v1 z)\n");
    let out = run_args(&["parse", "--debruijn", "\\x. x y"]);
    assert_eq!(out.stdout, "λ. 0 y\n");
    let argv: Vec<String> = ["linmod", "parse", "-"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let out = run(&argv, &mut "(\\a. a) b\n".as_bytes());
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "(\\v0. v0) b\n"));
    let out = run_args(&["parse", "(\\x. x"]);
    assert_eq!(out.code, EXIT_PARSE);
    assert!(out.stderr.contains("1:"), "{}", out.stderr);
}

#[test]
fn normalize_exit_codes() {
    let omega = "(\\x. x x) (\\x. x x)";
    let out = run_args(&["normalize", omega]);
    assert_eq!(
        (out.code, out.stdout.as_str()),
        (EXIT_FUEL, "fuel exhausted\n")
    );
    let out = run_args(&["normalize", "--fuel", "0", "(\\x. x) y"]);
    assert_eq!(out.code, EXIT_FUEL);
    let out = run_args(&["normalize", "--debruijn", "\\x. \\y. (\\z. z) x"]);
    assert_eq!(out.stdout, "λ. λ. 1\n");
}

#[test]
fn equiv_exit_codes() {
    assert_eq!(run_args(&["equiv", "x", "y"]).code, EXIT_NEGATIVE);
    let out = run_args(&["equiv", "(\\x. x x) (\\x. x x)", "y"]);
    assert_eq!(
        (out.code, out.stdout.as_str()),
        (EXIT_FUEL, "inconclusive\n")
    );
}

#[test]
fn leq_and_subst() {
    assert_eq!(run_args(&["leq", "(\\x. x) y", "y"]).code, EXIT_OK);
    assert_eq!(run_args(&["leq", "y", "(\\x. x) y"]).code, EXIT_NEGATIVE);
    assert_eq!(
        run_args(&["leq", "--depth", "0", "(\\x. x) y", "y"]).code,
        EXIT_NEGATIVE
    );
    let out = run_args(&["subst", "--map", "x=\\a. a,y=z", "x y"]);
    assert_eq!(out.stdout, "(\\v0. v0) z\n");
    let out = run_args(&["subst", "--map", "x=z", "\\x. x"]);
    assert_eq!(out.stdout, "\\v0. v0\n");
    assert_eq!(run_args(&["subst", "--map", "oops", "x"]).code, EXIT_USAGE);
}

#[test]
fn fold_targets() {
    let out = run_args(&["fold", "--target", "nf", "(\\f. \\x. f (f x)) (\\y. y)"]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "\\v0. v0\n"));
    let out = run_args(&["fold", "--target", "lc", "x"]);
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn typecheck_outcomes() {
    let out = run_args(&["typecheck", "--ctx", "f:* -> *,x:*", "\\g:* -> *. g (f x)"]);
    assert_eq!(
        (out.code, out.stdout.as_str()),
        (EXIT_OK, "(* -> *) -> *\n")
    );
    assert_eq!(
        run_args(&["typecheck", "--ctx", "x:*", "x x"]).code,
        EXIT_NEGATIVE
    );
    assert_eq!(run_args(&["typecheck", "y"]).code, EXIT_NEGATIVE);
}

#[test]
fn usage_errors() {
    assert_eq!(run_args(&["--bogus"]).code, EXIT_USAGE);
    assert_eq!(run_args(&["normalize", "--gas", "3", "x"]).code, EXIT_USAGE);
    assert_eq!(
        run_args(&["laws", "--suite", "algebra", "--instance", "lc"]).code,
        EXIT_USAGE
    );
    assert_eq!(run_args(&[]).code, EXIT_USAGE);
    assert_eq!(run_args(&["--help"]).code, EXIT_OK);
    assert_eq!(run_args(&["--version"]).code, EXIT_OK);
}

#[test]
fn law_reports_are_deterministic() {
    let args = [
        "laws",
        "--suite",
        "monad",
        "--instance",
        "lc",
        "--samples",
        "200",
        "--seed",
        "7",
    ];
    let a = run_args(&args);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a, run_args(&args));
    assert!(a
        .stdout
        .starts_with("suite: monad\ninstance: lc\nsamples: 200\nseed: 7\n"));
}

#[test]
fn every_shipped_suite_passes() {
    let pairs = [
        ("module", "derived-lc"),
        ("module", "product-lc"),
        ("module", "tlist"),
        ("linearity", "lc"),
        ("linearity", "list"),
        ("linearity", "derived-lc"),
        ("algebra", "list"),
    ];
    for (suite, instance) in pairs {
        let out = run_args(&[
            "laws",
            "--suite",
            suite,
            "--instance",
            instance,
            "--samples",
            "200",
        ]);
        assert_eq!(out.code, EXIT_OK, "{suite}/{instance}:\n{}", out.stdout);
    }
}
