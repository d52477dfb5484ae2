//! Command-line runner for the verification suites: configure a
//! deformation and a grade cutoff, run named suites, and emit a
//! machine-readable report. Exit code 0 means every check passed, 1
//! means at least one check failed, 2 means the invocation or the
//! configuration was invalid.

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qfock::config::{ReportFormat, RunConfig};
use qfock::report;
use qfock::suites::{run_suites, SuiteOutcome};

#[derive(Parser)]
#[command(
    name = "qfock",
    version,
    about = "Numerical checks for Yang-Baxter-deformed Fock spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites against one deformation.
    Verify(CommonArgs),
    /// Run the non-injectivity witness experiments.
    Witness(CommonArgs),
    /// Run the quasi-free (modular) suite.
    Araki(CommonArgs),
    /// Print the resolved configuration and derived constants.
    Info(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Flat key = value configuration file; flags override its values.
    #[arg(long)]
    config: Option<String>,
    /// One-particle dimension.
    #[arg(long)]
    d: Option<usize>,
    /// Deformation parameter of the scaled flip, |q| < 1.
    #[arg(long, allow_hyphen_values = true)]
    q: Option<f64>,
    /// Path to a Hermitian coupling matrix (text: rows cols, then re im pairs).
    #[arg(long)]
    qmatrix: Option<String>,
    /// Path to a full custom deformation matrix on H (x) H.
    #[arg(long)]
    tmatrix: Option<String>,
    /// Grade cutoff N.
    #[arg(long = "N", alias = "levels")]
    levels: Option<usize>,
    /// Degree or degree range, e.g. 2 or 1..4.
    #[arg(long)]
    n: Option<String>,
    /// Coefficient dimension for vector-valued checks.
    #[arg(long)]
    p: Option<usize>,
    /// Seed of the reproducible generator.
    #[arg(long)]
    seed: Option<u64>,
    /// Random instances per check family.
    #[arg(long)]
    instances: Option<usize>,
    /// Tolerance overrides, name=value; repeatable.
    #[arg(long = "tol")]
    tolerances: Vec<String>,
    /// Comma-separated suite list (verify only).
    #[arg(long)]
    suite: Option<String>,
    /// Pair eigenvalues of the quasi-free generator, comma separated.
    #[arg(long)]
    lambdas: Option<String>,
    /// Dimension of the fixed (eigenvalue one) part.
    #[arg(long = "fixed-dim")]
    fixed_dim: Option<usize>,
    /// Spectral window cutoff of the non-injectivity criterion.
    #[arg(long = "t-cut")]
    t_cut: Option<f64>,
    /// Matrix budget for the doubled-space evaluation.
    #[arg(long)]
    budget: Option<usize>,
    /// Report output path; stdout when absent.
    #[arg(long)]
    out: Option<String>,
    /// Report format: json or csv.
    #[arg(long)]
    format: Option<String>,
}

fn build_config(args: &CommonArgs) -> qfock::Result<RunConfig> {
    let mut config = match &args.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    if let Some(d) = args.d {
        config.apply("d", &d.to_string())?;
    }
    if let Some(q) = args.q {
        config.apply("q", &q.to_string())?;
    }
    if let Some(path) = &args.qmatrix {
        config.apply("qmatrix", path)?;
    }
    if let Some(path) = &args.tmatrix {
        config.apply("tmatrix", path)?;
    }
    if let Some(levels) = args.levels {
        config.apply("N", &levels.to_string())?;
    }
    if let Some(n) = &args.n {
        config.apply("n", n)?;
    }
    if let Some(p) = args.p {
        config.apply("p", &p.to_string())?;
    }
    if let Some(seed) = args.seed {
        config.apply("seed", &seed.to_string())?;
    }
    if let Some(instances) = args.instances {
        config.apply("instances", &instances.to_string())?;
    }
    for spec in &args.tolerances {
        let (name, value) = spec.split_once('=').ok_or_else(|| {
            qfock::Error::Config(format!("--tol expects name=value, got {spec:?}"))
        })?;
        config.apply(&format!("tol.{name}"), value)?;
    }
    if let Some(suite) = &args.suite {
        config.apply("suite", suite)?;
    }
    if let Some(lambdas) = &args.lambdas {
        config.apply("lambdas", lambdas)?;
    }
    if let Some(fd) = args.fixed_dim {
        config.apply("fixed_dim", &fd.to_string())?;
    }
    if let Some(tc) = args.t_cut {
        config.apply("t_cut", &tc.to_string())?;
    }
    if let Some(budget) = args.budget {
        config.apply("budget", &budget.to_string())?;
    }
    if let Some(out) = &args.out {
        config.apply("out", out)?;
    }
    if let Some(format) = &args.format {
        config.apply("format", format)?;
    }
    Ok(config)
}

/// Writes the report (plus, for witness runs, the structured witness
/// objects) and prints one summary line per check to stderr. The
/// report file itself carries no timestamps, so identical runs produce
/// identical bytes.
fn emit(config: &RunConfig, outcome: &SuiteOutcome) -> qfock::Result<()> {
    let body = match config.format {
        ReportFormat::Json => {
            if outcome.witness_reports.is_empty() {
                report::to_json(&outcome.checks)
            } else {
                let runs: Vec<String> = outcome
                    .witness_reports
                    .iter()
                    .map(|w| w.to_json())
                    .collect();
                format!(
                    "{{\"witness_runs\": [{}], \"checks\": {}}}",
                    runs.join(", "),
                    report::to_json(&outcome.checks)
                )
            }
        }
        ReportFormat::Csv => report::to_csv(&outcome.checks),
    };
    match &config.out {
        Some(path) => {
            std::fs::write(path, body)?;
            eprintln!("report written to {path}");
        }
        None => println!("{body}"),
    }
    for check in &outcome.checks {
        eprintln!("{}", check.summary());
    }
    Ok(())
}

fn run(command: Command) -> qfock::Result<bool> {
    match command {
        Command::Verify(args) => {
            let mut config = build_config(&args)?;
            if args.suite.is_none() && config.suites.is_empty() {
                for suite in [
                    "deformation",
                    "fock",
                    "wick",
                    "khintchine-free",
                    "khintchine-deformed",
                ] {
                    config.suites.push(suite.to_string());
                }
            }
            config.validate()?;
            let started = std::time::Instant::now();
            let outcome = run_suites(&config)?;
            emit(&config, &outcome)?;
            eprintln!(
                "{} checks in {:.2}s",
                outcome.checks.len(),
                started.elapsed().as_secs_f64()
            );
            Ok(outcome.all_pass())
        }
        Command::Witness(args) => {
            let mut config = build_config(&args)?;
            config.suites = vec!["witness".to_string()];
            config.validate()?;
            let outcome = run_suites(&config)?;
            emit(&config, &outcome)?;
            Ok(outcome.all_pass())
        }
        Command::Araki(args) => {
            let mut config = build_config(&args)?;
            config.suites = vec!["araki".to_string()];
            config.validate()?;
            let outcome = run_suites(&config)?;
            emit(&config, &outcome)?;
            Ok(outcome.all_pass())
        }
        Command::Info(args) => {
            let config = build_config(&args)?;
            config.validate()?;
            let t = config.deformation_operator()?;
            let c = qfock::fock::c_constant(t.q_bound())?;
            let mut out = std::io::stdout().lock();
            writeln!(out, "qfock {}", env!("CARGO_PKG_VERSION"))?;
            writeln!(out, "d = {}", t.d())?;
            writeln!(out, "q_bound = {}", t.q_bound())?;
            writeln!(out, "tracial = {}", t.is_tracial())?;
            writeln!(out, "norm_constant = {}", report::format_float(c))?;
            writeln!(out, "cutoff N = {}", config.levels)?;
            let total: usize = (0..=config.levels).map(|m| t.d().pow(m as u32)).sum();
            writeln!(out, "fock dimension = {total}")?;
            if t.d() >= 2 {
                let crossing = qfock::witness::crossing_index(t.d(), t.q_bound())?;
                writeln!(out, "crossing_index = {crossing}")?;
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
