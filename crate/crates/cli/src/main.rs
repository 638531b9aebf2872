//! `tdi`: command-line front end for tdi-core.
//!
//! Exit codes: 0 success/true, 1 false or negative verdict, 2 usage error,
//! 3 parse error, 4 precondition violation.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tdi_core::harness::suites::{render_report, run_suite, Suite, SuiteConfig};
use tdi_core::harness::Scenario;
use tdi_core::invariant_spaces::{
    is_dilation_invariant, is_translation_invariant, lowerset_member, sigma_orbit, tau_orbit,
    tausigma_orbit,
};
use tdi_core::muntz::{render_table, run_demo};
use tdi_core::operators::{apply_operator, difference, dilate, partial, translate};
use tdi_core::{Error, LowerSet, MultiIndex, OperatorMode, Point, PolySpace, Polynomial};

#[derive(Parser)]
#[command(
    name = "tdi",
    version,
    about = "Translation-dilation invariant polynomial spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply an operator to a polynomial and print the result
    Op(OpArgs),
    /// Print the tau, sigma or tau-sigma orbit of a polynomial
    Orbit {
        #[arg(long, value_enum)]
        kind: OrbitKind,
        #[arg(short, long = "poly")]
        p: String,
        /// Number of variables (inferred from the polynomial by default)
        #[arg(long)]
        d: Option<usize>,
    },
    /// Decide whether a polynomial lies in the monomial span over a lower set
    Member {
        #[arg(short, long = "poly")]
        p: String,
        /// Lower set JSON, inline or @file
        #[arg(long)]
        omega: String,
    },
    /// Run a closure scenario file and print the verdict
    Closure {
        #[arg(long)]
        scenario: String,
    },
    /// Check invariance of the span of a basis file (one polynomial per line)
    Invariance {
        #[arg(long)]
        space: String,
        #[arg(long, value_enum)]
        kind: InvarianceKind,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Run the seeded oracle-equivalence suites
    Verify {
        /// lemma2, lemma3, corollary6, taylor, delta or all
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Random cases per suite
        #[arg(long, default_value_t = 12)]
        trials: usize,
        /// Fixed dimension; cycles through 1, 2, 3 when omitted
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 4)]
        deg: u32,
        #[arg(long, default_value_t = 9)]
        height: u64,
        /// Sample points per oracle batch
        #[arg(long, default_value_t = 4)]
        batch: usize,
    },
    /// Least-squares demo with prime and twice-prime exponents
    Muntz {
        #[arg(long, default_value_t = 8)]
        target: u32,
        /// Comma-separated exponent bounds, strictly increasing
        #[arg(long, value_delimiter = ',', default_values_t = [10, 30, 100])]
        bounds: Vec<u32>,
        #[arg(long, default_value_t = 512)]
        grid: usize,
    },
}

#[derive(clap::Args)]
struct OpArgs {
    #[arg(long, value_enum)]
    apply: OpKind,
    #[arg(short, long = "poly")]
    p: String,
    /// Point for translate/dilate
    #[arg(long)]
    y: Option<String>,
    /// Multi-index for partial/delta, e.g. 1,0
    #[arg(long)]
    alpha: Option<String>,
    /// Operator polynomial for polyop
    #[arg(long)]
    operator: Option<String>,
    #[arg(long, value_enum, default_value = "d")]
    mode: Mode,
    #[arg(long)]
    d: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpKind {
    Translate,
    Dilate,
    Partial,
    Delta,
    Polyop,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    D,
    Diff,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrbitKind {
    Tau,
    Sigma,
    Tausigma,
}

#[derive(Clone, Copy, ValueEnum)]
enum InvarianceKind {
    Translation,
    Dilation,
    Tdi,
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<bool, Failure>;

/// Inline text, or the contents of a file when prefixed with `@`.
fn read_input(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => read_file(path),
        None => Ok(arg.to_string()),
    }
}

fn read_file(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))
}

fn parse_index(text: &str) -> Result<MultiIndex, Failure> {
    let trimmed = text
        .trim()
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']']);
    let mut entries = Vec::new();
    let mut offset = 0;
    for part in trimmed.split(',') {
        let value = part.trim().parse::<u32>().map_err(|_| {
            Failure::Core(Error::Parse {
                position: offset,
                message: format!("expected a natural number, found {:?}", part.trim()),
            })
        })?;
        entries.push(value);
        offset += part.len() + 1;
    }
    Ok(MultiIndex::new(entries))
}

fn parse_poly(text: &str, dim: Option<usize>) -> Result<Polynomial, Failure> {
    Ok(Polynomial::parse(&read_input(text)?, dim)?)
}

fn run_op(args: &OpArgs) -> Outcome {
    let y = args
        .y
        .as_deref()
        .map(|t| read_input(t).and_then(|s| Ok(Point::parse(&s)?)))
        .transpose()?;
    let alpha = args.alpha.as_deref().map(parse_index).transpose()?;
    let dim = args
        .d
        .or(y.as_ref().map(Point::dim))
        .or(alpha.as_ref().map(MultiIndex::dim));
    let p = parse_poly(&args.p, dim)?;
    let missing = |flag: &str| Failure::Usage(format!("--apply needs {flag}"));
    let result = match args.apply {
        OpKind::Translate => translate(&p, y.as_ref().ok_or_else(|| missing("--y"))?)?,
        OpKind::Dilate => dilate(&p, y.as_ref().ok_or_else(|| missing("--y"))?)?,
        OpKind::Partial => partial(&p, alpha.as_ref().ok_or_else(|| missing("--alpha"))?)?,
        OpKind::Delta => difference(&p, alpha.as_ref().ok_or_else(|| missing("--alpha"))?)?,
        OpKind::Polyop => {
            let text = args
                .operator
                .as_deref()
                .ok_or_else(|| missing("--operator"))?;
            let operator = parse_poly(text, Some(p.dim()))?;
            let mode = match args.mode {
                Mode::D => OperatorMode::Derivative,
                Mode::Diff => OperatorMode::Difference,
            };
            apply_operator(&operator, &p, mode)?
        }
    };
    println!("{result}");
    Ok(true)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Op(args) => run_op(&args),
        Command::Orbit { kind, p, d } => {
            let p = parse_poly(&p, d)?;
            match kind {
                OrbitKind::Tau => print!("{}", tau_orbit(&p).to_lines()),
                OrbitKind::Sigma => print!("{}", sigma_orbit(&p).to_lines()),
                OrbitKind::Tausigma => println!("{}", tausigma_orbit(&p)),
            }
            Ok(true)
        }
        Command::Member { p, omega } => {
            let omega = LowerSet::from_json(&read_input(&omega)?)?;
            let p = parse_poly(&p, Some(omega.dim()))?;
            let membership = lowerset_member(&p, &omega)?;
            println!("{}", membership.member);
            if let Some(w) = membership.witness {
                println!("witness {w}");
            }
            Ok(membership.member)
        }
        Command::Closure { scenario } => {
            let path = scenario.strip_prefix('@').unwrap_or(&scenario);
            let verdict = Scenario::from_json(&read_file(path)?)?.run()?;
            println!("{}", verdict.to_json());
            Ok(verdict.member)
        }
        Command::Invariance { space, kind, d } => {
            let path = space.strip_prefix('@').unwrap_or(&space);
            let space = PolySpace::from_lines(&read_file(path)?, d)?;
            let holds = match kind {
                InvarianceKind::Translation => is_translation_invariant(&space),
                InvarianceKind::Dilation => is_dilation_invariant(&space),
                InvarianceKind::Tdi => {
                    is_translation_invariant(&space) && is_dilation_invariant(&space)
                }
            };
            println!("{holds}");
            Ok(holds)
        }
        Command::Verify {
            suite,
            seed,
            trials,
            d,
            deg,
            height,
            batch,
        } => {
            let suites = Suite::parse_list(&suite)
                .map_err(|_| Failure::Usage(format!("unknown suite {suite:?}")))?;
            if trials == 0 || batch == 0 || height == 0 || d == Some(0) {
                return Err(Failure::Usage(
                    "--trials, --batch, --height and --d must be positive".into(),
                ));
            }
            let cfg = SuiteConfig {
                seed,
                cases: trials,
                dim: d,
                degree_bound: deg,
                coefficient_height: height,
                batch,
            };
            let outcomes: Vec<_> = suites.iter().map(|s| run_suite(*s, &cfg)).collect();
            print!("{}", render_report(&cfg, &outcomes));
            Ok(outcomes.iter().all(|o| o.all_passed()))
        }
        Command::Muntz {
            target,
            bounds,
            grid,
        } => {
            let reports = run_demo(target, &bounds, grid)?;
            print!("{}", render_table(&reports));
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e @ Error::Parse { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(4)
        }
    }
}
