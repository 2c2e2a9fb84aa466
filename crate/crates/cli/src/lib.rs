//! The `linmod` command line.
//!
//! | command     | exit codes                                            |
//! |-------------|-------------------------------------------------------|
//! | `parse`     | 0 ok, 2 parse error                                   |
//! | `normalize` | 0 ok, 2 parse error, 3 fuel exhausted                 |
//! | `equiv`     | 0 equivalent, 1 inequivalent, 3 inconclusive          |
//! | `leq`       | 0 related, 1 not related                              |
//! | `subst`     | 0 ok, 2 parse error                                   |
//! | `laws`      | 0 all laws as expected, 1 otherwise                   |
//! | `fold`      | 0 ok, 3 fuel exhausted                                |
//! | `typecheck` | 0 well-typed, 1 type error, 2 parse error             |
//!
//! Usage errors (unknown flags, unsupported suite/instance pairs) exit 64.

use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use linmod_core::{ConfigError, Name, Subst};
use linmod_lambda::{
    beta_eta_equiv, iota_fold, lc_exp, lc_monad, lc_subst, nf_exp, normalize, parse_term,
    preorder_leq, Equivalence, Fuel, LcTerm, LeqOutcome,
};
use linmod_typed::{parse_context, parse_stlc, typecheck, StlcParseError};

mod laws;

pub use laws::{Instance, Suite};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_FUEL: u8 = 3;
pub const EXIT_USAGE: u8 = 64;

pub const DEFAULT_FUEL: u64 = 10_000;

#[derive(Parser, Debug)]
#[command(
    name = "linmod",
    version,
    about = "Monads, modules and linear morphisms over lambda syntax"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a term and print it in canonical form.
    Parse {
        /// The term, or `-` for stdin.
        term: String,
        #[arg(long)]
        debruijn: bool,
    },
    /// Print the βη-normal form of a term.
    Normalize {
        term: String,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
        #[arg(long)]
        debruijn: bool,
    },
    /// Decide βη-equivalence by normalization.
    Equiv {
        left: String,
        right: String,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
    /// Search for a reduction path from the first term to the second.
    Leq {
        left: String,
        right: String,
        #[arg(long, default_value_t = 20)]
        depth: usize,
    },
    /// Substitute closed terms for free names.
    Subst {
        /// `name=term[,name=term...]`
        #[arg(long)]
        map: String,
        term: String,
    },
    /// Run a law suite on a shipped instance.
    Laws {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, value_enum)]
        instance: Instance,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
    /// Fold a term into an exponential monad.
    Fold {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
        term: String,
    },
    /// Infer the type of a simply typed term.
    Typecheck {
        term: String,
        /// Types of free variables: `x:*,f:*->*`.
        #[arg(long, default_value = "")]
        ctx: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Nf,
    Lc,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(code: u8, stdout: impl Into<String>) -> Self {
        let mut stdout = stdout.into();
        if !stdout.ends_with('\n') {
            stdout.push('\n');
        }
        Output {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn err(code: u8, stderr: impl std::fmt::Display) -> Self {
        Output {
            code,
            stdout: String::new(),
            stderr: format!("error: {stderr}\n"),
        }
    }
}

/// Runs the command line `args` (program name first).
pub fn run(args: &[String], stdin: &mut dyn Read) -> Output {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Output::ok(EXIT_OK, rendered)
            };
        }
    };
    match dispatch(cli.command, stdin) {
        Ok(out) | Err(out) => out,
    }
}

fn read_arg(arg: &str, stdin: &mut dyn Read) -> Result<String, Output> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let mut buf = String::new();
    stdin
        .read_to_string(&mut buf)
        .map_err(|e| Output::err(EXIT_USAGE, format!("reading stdin: {e}")))?;
    Ok(buf.trim().to_string())
}

fn term(arg: &str, stdin: &mut dyn Read) -> Result<LcTerm, Output> {
    let src = read_arg(arg, stdin)?;
    parse_term(&src).map_err(|e| Output::err(EXIT_PARSE, e))
}

fn render(t: &LcTerm, debruijn: bool) -> String {
    if debruijn {
        t.debruijn().to_string()
    } else {
        t.to_string()
    }
}

fn dispatch(command: Command, stdin: &mut dyn Read) -> Result<Output, Output> {
    Ok(match command {
        Command::Parse {
            term: src,
            debruijn,
        } => Output::ok(EXIT_OK, render(&term(&src, stdin)?, debruijn)),
        Command::Normalize {
            term: src,
            fuel,
            debruijn,
        } => {
            let t = term(&src, stdin)?;
            match normalize(&t, &mut Fuel::new(fuel)) {
                Ok(nf) => Output::ok(EXIT_OK, render(nf.term(), debruijn)),
                Err(e) => Output {
                    code: EXIT_FUEL,
                    stdout: "fuel exhausted\n".to_string(),
                    stderr: format!("{e}\n"),
                },
            }
        }
        Command::Equiv { left, right, fuel } => {
            let (a, b) = (term(&left, stdin)?, term(&right, stdin)?);
            let verdict = beta_eta_equiv(&a, &b, Fuel::new(fuel));
            let code = match verdict {
                Equivalence::Equivalent => EXIT_OK,
                Equivalence::Inequivalent => EXIT_NEGATIVE,
                Equivalence::Inconclusive => EXIT_FUEL,
            };
            Output::ok(code, verdict.to_string())
        }
        Command::Leq { left, right, depth } => {
            let (a, b) = (term(&left, stdin)?, term(&right, stdin)?);
            match preorder_leq(&a, &b, depth) {
                LeqOutcome::Related(k) => Output::ok(
                    EXIT_OK,
                    format!("related ({k} step{})", if k == 1 { "" } else { "s" }),
                ),
                LeqOutcome::NotRelatedWithinDepth => {
                    Output::ok(EXIT_NEGATIVE, format!("not related within depth {depth}"))
                }
                LeqOutcome::SearchLimit => Output::ok(
                    EXIT_NEGATIVE,
                    format!("not related: search limit reached before depth {depth}"),
                ),
            }
        }
        Command::Subst { map, term: src } => {
            let s = parse_map(&map)?;
            let t = term(&src, stdin)?;
            Output::ok(EXIT_OK, lc_subst(&s, &t).to_string())
        }
        Command::Laws {
            suite,
            instance,
            samples,
            seed,
            fuel,
        } => match laws::run_suite(suite, instance, samples, seed, fuel) {
            Ok(outcome) => Output::ok(
                if outcome.passed {
                    EXIT_OK
                } else {
                    EXIT_NEGATIVE
                },
                outcome.text,
            ),
            Err(e) => Output::err(EXIT_USAGE, e),
        },
        Command::Fold {
            target,
            fuel,
            term: src,
        } => {
            let t = term(&src, stdin)?;
            match target {
                Target::Nf => match iota_fold(&nf_exp(fuel), &t, &Subst::identity()) {
                    Ok(nf) => Output::ok(EXIT_OK, nf.to_string()),
                    Err(e) => Output {
                        code: EXIT_FUEL,
                        stdout: "fuel exhausted\n".to_string(),
                        stderr: format!("{e}\n"),
                    },
                },
                Target::Lc => match lc_exp(lc_monad()).validated(200, 0) {
                    Ok(_) => unreachable!("syntax is not an exponential monad"),
                    Err(e) => Output::err(
                        EXIT_USAGE,
                        ConfigError::Unsupported(format!("cannot fold into lc: {e}")),
                    ),
                },
            }
        }
        Command::Typecheck { term: src, ctx } => {
            let ctx = parse_context(&ctx).map_err(|e| Output::err(EXIT_USAGE, e))?;
            let src = read_arg(&src, stdin)?;
            let t = match parse_stlc(&src, &ctx) {
                Ok(t) => t,
                Err(e @ StlcParseError::Unbound(_)) => return Err(Output::err(EXIT_NEGATIVE, e)),
                Err(e) => return Err(Output::err(EXIT_PARSE, e)),
            };
            match typecheck(&ctx, &t) {
                Ok(ty) => Output::ok(EXIT_OK, ty.to_string()),
                Err(e) => Output::err(EXIT_NEGATIVE, format!("type error: {e}")),
            }
        }
    })
}

fn parse_map(map: &str) -> Result<Subst<Name, LcTerm>, Output> {
    let mut s = Subst::identity();
    for entry in map.split(',').filter(|e| !e.trim().is_empty()) {
        let Some((name, src)) = entry.split_once('=') else {
            return Err(Output::err(
                EXIT_USAGE,
                format!("expected `name=term`, found `{entry}`"),
            ));
        };
        let name = name.trim();
        if !linmod_core::is_identifier(name) {
            return Err(Output::err(
                EXIT_USAGE,
                format!("`{name}` is not an identifier"),
            ));
        }
        let image = parse_term(src).map_err(|e| Output::err(EXIT_PARSE, e))?;
        s.insert(Name::new(name), image);
    }
    Ok(s)
}

/// Convenience for tests: runs `linmod <args..>` with empty stdin.
pub fn run_args(args: &[&str]) -> Output {
    let mut argv = vec!["linmod".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    run(&argv, &mut std::io::empty())
}
