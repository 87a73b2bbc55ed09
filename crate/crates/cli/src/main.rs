use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use unimech_cli::{describe, env_tol, load_config, run, validate_file, CliError};

/// Unified-product models: validation, description and integration.
#[derive(Parser)]
#[command(name = "unimech", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate, integrate and write the trajectory and report.
    Run { config: PathBuf },
    /// Run the algebra and axiom checks on a config's model.
    Validate { config: PathBuf },
    /// Print dimensions, labels and nonzero structure entries of a model.
    Describe { model: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = env_tol().and_then(|tol| match &cli.command {
        Command::Run { config } => {
            let cfg = load_config(config)?;
            let report = run(&cfg, tol)?;
            for d in &report.conservation {
                println!(
                    "{}: initial {:e}, max abs drift {:e}, max rel drift {:e}",
                    d.functional, d.initial, d.max_abs_drift, d.max_rel_drift
                );
            }
            Ok(())
        }
        Command::Validate { config } => {
            print!("{}", validate_file(config, tol)?);
            Ok(())
        }
        Command::Describe { model } => {
            print!("{}", describe(model, tol)?);
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Validation(report) => {
                    print!("{report}");
                    eprintln!("validation failed");
                }
                other => eprintln!("{other}"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
