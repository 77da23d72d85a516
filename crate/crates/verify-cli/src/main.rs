use std::process::ExitCode;

use clap::Parser;
use verify_cli::{emit_report, run_scenario, Cli, CliError, ScenarioConfig, EXIT_USAGE};

fn run(cli: &Cli) -> Result<i32, CliError> {
    let cfg = ScenarioConfig::from_cli(cli)?;
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("--jobs {n}: {e}")))?;
    }
    let report = run_scenario(&cfg)?;
    let text = emit_report(&report, cli.format, cfg.verbose);
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(report.outcome.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("verify: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
