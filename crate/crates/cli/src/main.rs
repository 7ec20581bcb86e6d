use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use qsearch_cli::{emit_report, exit, report_exit_code, run_experiment, CliError, Overrides};

/// Run search-circuit experiments and check each claim against its bound.
///
/// Exit status: 0 all claims pass, 1 a claim failed, 2 usage or I/O error,
/// 3 the entanglement witnesses disagreed (a numerical bug).
#[derive(Parser)]
#[command(name = "qsearch", version)]
struct Cli {
    /// JSON config file with the flag names as keys; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    flags: Overrides,
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let base = match &cli.config {
        Some(path) => Overrides::from_file(path)?,
        None => Overrides::default(),
    };
    let config = base.layer(cli.flags).resolve()?;
    let report = run_experiment(&config)?;
    emit_report(&report, config.format, config.out.as_deref())?;
    for c in report.failures() {
        eprintln!("FAIL {}: measured {:e}, expected {}", c.claim_id, c.measured, c.expected);
    }
    Ok(report_exit_code(&report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = run(cli).unwrap_or_else(|e| {
        eprintln!("qsearch: {e}");
        e.exit_code()
    });
    debug_assert!((exit::PASS..=exit::WITNESS_DISAGREEMENT).contains(&code));
    ExitCode::from(code as u8)
}
