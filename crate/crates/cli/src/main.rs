mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use froblab::ideals::set_pair_budget;

use args::Cli;
use commands::CliError;

const BUDGET_ENV: &str = "FROBLAB_BUDGET";

fn configure_budget(cli: &Cli) -> Result<(), CliError> {
    let from_env = match std::env::var(BUDGET_ENV) {
        Ok(raw) => Some(
            raw.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("{BUDGET_ENV}={raw} is not a non-negative integer")))?,
        ),
        Err(_) => None,
    };
    if let Some(budget) = from_env.or(cli.budget) {
        set_pair_budget(budget);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(if err.use_stderr() { 2 } else { 0 });
        }
    };
    let result = configure_budget(&cli).and_then(|()| commands::run(&cli));
    match result {
        Ok(finished) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(finished.output.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(if finished.passed { 0 } else { 1 })
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
