use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod experiments;
mod spec;
mod table;

use spec::{ExperimentSpec, SpecError};

#[derive(Parser)]
#[command(name = "jcsim", about = "Jaynes-Cummings state-transfer experiment runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named experiment and write <name>.csv + <name>.meta.json.
    Run {
        /// Experiment name (see `jcsim run --help` for the list).
        #[arg(value_parser = spec::EXPERIMENT_NAMES)]
        experiment: String,
        /// Parameter override, `key=value`; repeatable. Flags win over the
        /// config file.
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
        /// Plain-text key=value config file.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Dry-run checks of an experiment spec: resource estimates and
    /// field-condition previews. Never writes anything.
    Validate {
        #[arg(value_parser = spec::EXPERIMENT_NAMES)]
        experiment: String,
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { experiment, params, config, out } => {
            ExperimentSpec::build(&experiment, &params, config.as_deref(), out)
                .and_then(|spec| experiments::run(&spec))
        }
        Command::Validate { experiment, params, config } => {
            ExperimentSpec::build(&experiment, &params, config.as_deref(), PathBuf::from("."))
                .map(|spec| {
                    let warnings = experiments::validate(&spec);
                    if warnings.is_empty() {
                        println!("ok: no warnings");
                    } else {
                        for w in warnings {
                            println!("warning: {w}");
                        }
                    }
                })
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(SpecError::Invalid(msg)) => {
            eprintln!("invalid spec: {msg}");
            ExitCode::from(2)
        }
        Err(SpecError::Numerical(msg)) => {
            eprintln!("numerical precondition failed: {msg}");
            ExitCode::from(3)
        }
        Err(SpecError::Io(err)) => {
            eprintln!("io error: {err}");
            ExitCode::FAILURE
        }
    }
}
