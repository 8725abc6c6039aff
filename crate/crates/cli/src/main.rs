use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use vacnoise_cli::config::{resolve, Format, RunConfig};
use vacnoise_cli::error::CliError;
use vacnoise_cli::output::{emit, to_json};
use vacnoise_cli::{commands, validate};

#[derive(Parser)]
#[command(name = "vacnoise", version, about = "Vacuum curvature noise spectra and geodesic-deviation limits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML run configuration; defaults apply when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Seed for the validation suite's random draws.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Worker threads for grid evaluation (env: VACNOISE_THREADS).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Output file; stdout when omitted (env: VACNOISE_OUTPUT).
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Perturb one named validation check (test hook).
    #[arg(long, global = true, hide = true, value_name = "CHECK")]
    inject_fault: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Stress-tensor channel coefficients per species and in total.
    Coefficients,
    /// Geodesic-deviation spectra on the frequency grid.
    Spectrum,
    /// Run the seeded invariant suite and write a JSON report.
    Validate,
    /// Eddington parameter and point-mass metric of the modified-gravity block.
    Eddington,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let env = |k: &str| std::env::var(k).ok();
    let resolved = resolve(&config, cli.output, cli.threads, cli.format, env)?;
    let out = resolved.output.as_deref();
    let rendered = match cli.command {
        Command::Coefficients => commands::coefficients(&config, resolved.format)?,
        Command::Spectrum => commands::spectrum(&config, resolved.format, resolved.threads)?,
        Command::Eddington => commands::eddington(&config, resolved.format)?,
        Command::Validate => {
            let seed = cli.seed.unwrap_or(validate::DEFAULT_SEED);
            eprintln!("seed: {seed}");
            let report = validate::run(&config, seed, cli.inject_fault.as_deref())?;
            let json = serde_json::to_value(&report).expect("report serializes");
            emit(&to_json(&json), out)?;
            for c in report.checks.iter().filter(|c| !c.passed) {
                eprintln!("FAIL {}: deviation {:e} > tolerance {:e}", c.name, c.deviation, c.tolerance);
            }
            eprintln!("{} of {} checks passed", report.passed, report.checks.len());
            if !report.all_passed() {
                return Err(CliError::Validation(format!("{} check(s) failed", report.failed)));
            }
            return Ok(());
        }
    };
    for n in &rendered.notices {
        eprintln!("notice: {n}");
    }
    emit(&rendered.text, out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("vacnoise: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
