//! `iwqm`: run the verification suites, check operator identities and dump
//! plot-ready data.
//!
//! Exit status is 0 when everything checked passes, 1 when a check fails or
//! output cannot be written, and 2 for usage errors.

mod dump;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use iwqm::fock::{identity_residual, parse_equation, AdjointSign, OperatorExpression};
use iwqm::verify::{self, Check, Report, RunConfig};
use iwqm::Error;

use output::Sink;

#[derive(Debug, Parser)]
#[command(name = "iwqm", version, about = "Inverted-well quantum mechanics: verification and data dumps")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Fock truncation (default 64; `dump gram` defaults to 12)
    #[arg(long, global = true)]
    nmax: Option<usize>,
    #[arg(long, global = true, default_value_t = 1.0)]
    omega: f64,
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Physical adjoint sign: +1 or -1
    #[arg(long, global = true, default_value = "-1", allow_hyphen_values = true, value_parser = parse_sigma)]
    sigma: AdjointSign,
    /// Fail instead of widening truncation-sensitive tolerances
    #[arg(long, global = true)]
    strict: bool,
    /// Write the main output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

fn parse_sigma(s: &str) -> Result<AdjointSign, String> {
    match s.trim() {
        "+1" | "1" | "+" | "plus" => Ok(AdjointSign::Plus),
        "-1" | "-" | "minus" | "\u{2212}1" => Ok(AdjointSign::Minus),
        other => Err(format!("expected +1 or -1, got {other:?}")),
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every verification suite
    Verify,
    /// Check an operator identity such as `comm(a-, a+) == I`
    OpCheck {
        #[arg(allow_hyphen_values = true)]
        expression: String,
    },
    /// Write data for plotting
    Dump {
        #[command(subcommand)]
        what: dump::DumpCommand,
    },
}

/// Failure modes mapped to exit codes.
pub enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_)
            | Error::InvalidDimension { .. }
            | Error::NonPositiveOmega(_)
            | Error::Parse { .. }
            | Error::TruncationBudget { .. } => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

pub struct Context {
    pub config: RunConfig,
    pub nmax: Option<usize>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

impl Context {
    pub fn sink(&self) -> Result<Sink, Failure> {
        Ok(Sink::open(self.out.as_deref())?)
    }
}

fn context(g: &GlobalArgs) -> Result<Context, Failure> {
    let seed = verify::seed_from_env()?;
    let config = RunConfig {
        nmax: g.nmax.unwrap_or(RunConfig::default().nmax),
        omega: g.omega,
        tol: g.tol,
        sigma: g.sigma,
        strict: g.strict,
        seed,
    };
    // nmax is checked by the commands that use it
    RunConfig {
        nmax: RunConfig::default().nmax,
        ..config
    }
    .validate()?;
    Ok(Context {
        config,
        nmax: g.nmax,
        format: g.format,
        out: g.out.clone(),
    })
}

fn cmd_verify(ctx: &Context) -> Result<bool, Failure> {
    if ctx.config.strict && ctx.config.nmax < RunConfig::NOMINAL_MIN_NMAX {
        return Err(Failure::Usage(format!(
            "--strict needs --nmax of at least {}",
            RunConfig::NOMINAL_MIN_NMAX
        )));
    }
    let outcome = verify::verify(&ctx.config)?;
    let mut sink = ctx.sink()?;
    match ctx.format.unwrap_or(Format::Json) {
        Format::Json => output::write_json(&mut sink, &outcome)?,
        Format::Csv => output::write_reports_csv(&mut sink, &outcome.suites)?,
    }
    sink.finish()?;
    for r in &outcome.suites {
        for c in r.failures() {
            eprintln!("FAIL {}/{}: {}", r.suite, c.name, c.detail.as_deref().unwrap_or(""));
        }
    }
    if let Some(series) = &outcome.bra_coherent_series {
        eprintln!("bra coherent series: {series}");
    }
    eprintln!("verify: {}", if outcome.pass { "pass" } else { "FAIL" });
    Ok(outcome.pass)
}

fn cmd_op_check(ctx: &Context, expression: &str) -> Result<bool, Failure> {
    let cfg = &ctx.config;
    let eq = parse_equation(expression, cfg.omega, cfg.sigma)?;
    let zero = OperatorExpression::scalar(Default::default());
    let rhs = eq.rhs.as_ref().unwrap_or(&zero);
    let r = identity_residual(&eq.lhs, rhs, cfg.nmax)?;
    let check = Check::new("identity", expression, r.residual, cfg.tol)
        .with_detail(format!("exact block {} of {}, sigma {}", r.block, r.dim, cfg.sigma));
    let report = Report::new("op-check", vec![check]);
    let mut sink = ctx.sink()?;
    match ctx.format.unwrap_or(Format::Json) {
        Format::Json => output::write_json(&mut sink, &report)?,
        Format::Csv => output::write_reports_csv(&mut sink, std::slice::from_ref(&report))?,
    }
    sink.finish()?;
    Ok(report.pass)
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let ctx = context(&cli.global)?;
    match cli.command {
        Command::Verify => cmd_verify(&ctx),
        Command::OpCheck { expression } => cmd_op_check(&ctx, &expression),
        Command::Dump { what } => dump::run(&ctx, what).map(|()| true),
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
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
