//! The `ifdist` command line: evaluate, compute moments and entropy, sample,
//! export plot grids, run verification suites, browse the named-case catalog.
//!
//! Exit codes: 0 success (divergent/no-closed-form moments are answers, not
//! failures), 1 failed verification checks, 2 parse or domain errors,
//! 3 non-convergent integration.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::model::{parse_call, IfParams};
use crate::moments::{Method, MomentResult};
use crate::verify::{Report, Suite};
use crate::{density, entropy, moments, registry, verify, Error, Result};

#[derive(Parser)]
#[command(
    name = "ifdist",
    version,
    about = "Interpolating family of size distributions: densities, moments, entropy, sampling, verification"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate pdf, logpdf, cdf or quantile at a point
    Eval(EvalArgs),
    /// Raw moment E[X^r], reporting divergence and method
    Moment(MomentArgs),
    /// Differential entropy in nats
    Entropy(DistArg),
    /// Draw reproducible samples, one value per line
    Sample(SampleArgs),
    /// Emit an evenly spaced pdf or cdf table
    Grid(GridArgs),
    /// Check the closed forms against the numerical oracle
    Verify(VerifyArgs),
    /// List the named cases or show one case in detail
    Registry(RegistryArgs),
}

#[derive(Args)]
struct DistArg {
    /// Distribution: `if(p=..,b=..,c=..,q=..,x0=..)` or a named case
    /// like `lomax(c=1,q=2)`; `p=inf` selects the limit family
    #[arg(long)]
    dist: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalFn {
    Pdf,
    Logpdf,
    Cdf,
    Quantile,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    dist: DistArg,
    /// Function to evaluate
    #[arg(long = "fn", value_enum)]
    func: EvalFn,
    /// Evaluation point (a probability in (0,1) for quantile)
    #[arg(long)]
    at: f64,
}

#[derive(Args)]
struct MomentArgs {
    #[command(flatten)]
    dist: DistArg,
    /// Moment order
    #[arg(long)]
    r: u32,
    /// Fall back to quadrature when no closed form applies
    #[arg(long)]
    fallback: bool,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    dist: DistArg,
    /// Number of draws
    #[arg(long)]
    n: usize,
    /// RNG seed; equal seeds give identical output
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum GridFn {
    Pdf,
    Cdf,
}

#[derive(Clone, Copy, ValueEnum)]
enum GridFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct GridArgs {
    #[command(flatten)]
    dist: DistArg,
    /// Function to tabulate
    #[arg(long = "fn", value_enum)]
    func: GridFn,
    /// Grid start
    #[arg(long)]
    from: f64,
    /// Grid end (must exceed start)
    #[arg(long)]
    to: f64,
    /// Number of evenly spaced points, at least 2
    #[arg(long)]
    points: usize,
    #[arg(long, value_enum, default_value_t = GridFormat::Csv)]
    format: GridFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite to run: specfun, density, moments, entropy, registry, all
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

#[derive(Args)]
struct RegistryArgs {
    /// Print every case name, one per line
    #[arg(long, conflicts_with = "show")]
    list: bool,
    /// Print the parameter mapping and constraints of one case
    #[arg(long, value_name = "NAME")]
    show: Option<String>,
}

/// Parses either spelling of a distribution: the five-parameter `if(...)`
/// form or a registry call.
pub fn parse_dist(s: &str) -> Result<IfParams> {
    let (name, pairs) = parse_call(s)?;
    if name == "if" {
        s.parse()
    } else {
        registry::resolve_pairs(&name, &pairs)
    }
}

/// Shortest decimal form after rounding to 15 significant digits, scientific
/// notation outside [1e-4, 1e15).
pub fn fmt15(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let rounded: f64 = format!("{x:.14e}").parse().expect("formatted float reparses");
    let mag = rounded.abs();
    if (1e-4..1e15).contains(&mag) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

#[derive(Serialize)]
struct GridPoint {
    x: f64,
    value: f64,
}

fn render_report_text(report: &Report) -> String {
    let mut out = String::new();
    for c in &report.checks {
        if c.pass {
            out.push_str(&format!("PASS {}  {}\n", c.id, c.description));
        } else {
            out.push_str(&format!(
                "FAIL {}  {} [expected {}, actual {}, tolerance {}]\n",
                c.id,
                c.description,
                fmt15(c.expected),
                fmt15(c.actual),
                fmt15(c.tolerance),
            ));
        }
    }
    out.push_str(&format!(
        "total {} passed {} failed {}\n",
        report.summary.total, report.summary.passed, report.summary.failed
    ));
    out
}

fn show_case(case: &registry::NamedCase) -> String {
    let mut out = format!("{} ({})\n", case.name, case.title);
    let params: Vec<String> = case
        .free_params
        .iter()
        .map(|(sym, dom)| format!("{sym} [{dom}]"))
        .collect();
    out.push_str(&format!("  parameters: {}\n", params.join(", ")));
    out.push_str(&format!("  maps to (p, b, c, q, x0) = {}\n", case.mapping));
    match case.mean_constraint {
        Some(cond) => out.push_str(&format!("  mean exists iff {cond}\n")),
        None => out.push_str("  mean always exists\n"),
    }
    out.push_str("  maximum-entropy constraints:\n");
    for con in case.constraints {
        out.push_str(&format!("    {con}\n"));
    }
    out
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Eval(args) => {
            let d = parse_dist(&args.dist.dist)?;
            let value = match args.func {
                EvalFn::Pdf => density::pdf(&d, args.at),
                EvalFn::Logpdf => density::log_pdf(&d, args.at),
                EvalFn::Cdf => density::cdf(&d, args.at),
                EvalFn::Quantile => density::quantile(&d, args.at)?,
            };
            println!("{}", fmt15(value));
            Ok(0)
        }
        Command::Moment(args) => {
            let d = parse_dist(&args.dist.dist)?;
            match moments::moment(&d, args.r, args.fallback)? {
                MomentResult::Finite { value, method } => {
                    let label = match method {
                        Method::ClosedForm => "closed-form",
                        Method::Quadrature => "quadrature",
                    };
                    println!("finite {} {label}", fmt15(value));
                }
                MomentResult::Divergent => println!("divergent"),
                MomentResult::NoClosedForm => println!("no-closed-form"),
            }
            Ok(0)
        }
        Command::Entropy(args) => {
            let d = parse_dist(&args.dist)?;
            println!("{}", fmt15(entropy::entropy(&d)?.value));
            Ok(0)
        }
        Command::Sample(args) => {
            let d = parse_dist(&args.dist.dist)?;
            let mut out = String::new();
            for x in density::sample(&d, args.seed, args.n) {
                out.push_str(&fmt15(x));
                out.push('\n');
            }
            print!("{out}");
            Ok(0)
        }
        Command::Grid(args) => {
            let d = parse_dist(&args.dist.dist)?;
            if !(args.from < args.to) {
                return Err(Error::invalid("from", "grid start must lie below --to"));
            }
            if args.points < 2 {
                return Err(Error::invalid("points", "need at least 2 grid points"));
            }
            let step = (args.to - args.from) / (args.points - 1) as f64;
            let table: Vec<GridPoint> = (0..args.points)
                .map(|i| {
                    let x = if i + 1 == args.points {
                        args.to
                    } else {
                        args.from + i as f64 * step
                    };
                    let value = match args.func {
                        GridFn::Pdf => density::pdf(&d, x),
                        GridFn::Cdf => density::cdf(&d, x),
                    };
                    GridPoint { x, value }
                })
                .collect();
            match args.format {
                GridFormat::Csv => {
                    let mut out = String::new();
                    for p in &table {
                        out.push_str(&format!("{},{}\n", fmt15(p.x), fmt15(p.value)));
                    }
                    print!("{out}");
                }
                GridFormat::Json => println!("{}", to_json(&table)?),
            }
            Ok(0)
        }
        Command::Verify(args) => {
            let suite: Suite = args.suite.parse()?;
            let report = verify::run(suite)?;
            match args.format {
                ReportFormat::Text => print!("{}", render_report_text(&report)),
                ReportFormat::Json => println!("{}", to_json(&report)?),
            }
            Ok(if report.all_pass() { 0 } else { 1 })
        }
        Command::Registry(args) => {
            if let Some(name) = &args.show {
                print!("{}", show_case(registry::case(name)?));
            } else if args.list {
                for name in registry::list_cases() {
                    println!("{name}");
                }
            } else {
                return Err(Error::parse(
                    "registry",
                    "pass --list or --show <name>",
                ));
            }
            Ok(0)
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map_err(|e| Error::Unsupported(format!("json encoding failed: {e}")))
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NonConvergence(_) => 3,
        _ => 2,
    }
}

/// Parses argv and runs one command, returning the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}
