use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gmult::registry::verify_registry;
use gmult::{demo_scenario, resolve_tolerance, run_scenario, run_scenario_with, sweep_scenario, Format, Report, Scenario};

#[derive(Parser)]
#[command(name = "gmult", version, about = "Seeded verification of multiplier and generalized trace-class identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum DemoName {
    Canonical,
    Sweep,
    Ghs,
}

#[derive(clap::Args)]
struct Output {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Overrides GMULT_TOLERANCE and the scenario tolerance.
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Run {
        scenario: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Run a bundled scenario (seed 0xC0FFEE).
    Demo {
        #[arg(value_enum)]
        name: DemoName,
        #[command(flatten)]
        output: Output,
    },
    /// Norms of truncated multipliers with weights from a law, e.g. `power:1`.
    Sweep {
        #[arg(long)]
        law: String,
        #[arg(long, value_delimiter = ',', default_value = "2,4,8,16,32")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        d0: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Parse and validate a scenario file.
    Validate { scenario: PathBuf },
}

fn read_scenario(path: &PathBuf) -> Result<Scenario, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Scenario::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn tolerance(output: &Output, scenario: Option<f64>) -> Result<f64, String> {
    let env = std::env::var("GMULT_TOLERANCE").ok();
    resolve_tolerance(output.tolerance, env.as_deref(), scenario).map_err(|e| e.to_string())
}

fn emit(report: &Report, output: &Output) -> Result<ExitCode, String> {
    let format = match output.format {
        FormatArg::Json => Format::Json,
        FormatArg::Markdown => Format::Markdown,
    };
    let text = report.emit(format);
    match &output.out {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| format!("{}: {e}", p.display()))?,
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(format!("stdout: {e}")),
                _ => {}
            }
        }
    }
    let s = report.summary;
    eprintln!("{} checks: {} passed, {} failed, {} skipped", s.total, s.passed, s.failed, s.skipped);
    Ok(if report.has_failures() { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    verify_registry().map_err(|e| e.to_string())?;
    match cli.command {
        Command::Run { scenario, seed, output } => {
            let mut s = read_scenario(&scenario)?;
            if let Some(seed) = seed {
                s.seed = seed;
            }
            let tol = tolerance(&output, s.tolerance)?;
            let report = run_scenario(&s, tol).map_err(|e| e.to_string())?;
            emit(&report, &output)
        }
        Command::Demo { name, output } => {
            let name = match name {
                DemoName::Canonical => "canonical",
                DemoName::Sweep => "sweep",
                DemoName::Ghs => "ghs",
            };
            let s = demo_scenario(name).expect("known demo");
            let tol = tolerance(&output, s.tolerance)?;
            let report = run_scenario(&s, tol).map_err(|e| e.to_string())?;
            emit(&report, &output)
        }
        Command::Sweep { law, sizes, d0, seed, output } => {
            let law = gmult::core::TailLaw::parse(&law).map_err(|e| e.to_string())?;
            if sizes.is_empty() || sizes.contains(&0) {
                return Err("sizes must be positive".into());
            }
            let s = sweep_scenario(law, d0, seed);
            let tol = tolerance(&output, s.tolerance)?;
            let report = run_scenario_with(&s, tol, Some(&sizes)).map_err(|e| e.to_string())?;
            emit(&report, &output)
        }
        Command::Validate { scenario } => {
            let s = read_scenario(&scenario)?;
            println!("ok: {} suites, d={} d0={} n={}, {} trials", s.suites.len(), s.dims.d, s.dims.d0, s.dims.n, s.trials);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
