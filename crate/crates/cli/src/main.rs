mod args;
mod commands;
mod error;
mod io;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::{CliError, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};

fn run(cli: &Cli) -> Result<commands::Outcome, CliError> {
    let seed = cli.seed;
    match &cli.command {
        Command::Norm(a) => commands::norm(seed, a),
        Command::Constants(a) => commands::constants(seed, a),
        Command::MnEstimate(a) => commands::mn_estimate(seed, a),
        Command::Polarization(a) => commands::polarization(seed, a),
        Command::Remez(a) => commands::remez(seed, a),
        Command::Plank(a) => commands::plank(seed, a),
        Command::Extremal(a) => commands::extremal(seed, a),
        Command::VerifyInequality(a) => commands::verify_inequality(seed, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    if let Err(e) = io::emit(cli.out.as_deref(), &outcome.text) {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code());
    }
    ExitCode::from(if outcome.check_failed { EXIT_CHECK_FAILED } else { EXIT_OK })
}
