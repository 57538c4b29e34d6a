use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use relhoch_cli::{render, run_file, RunOptions, DEFAULT_NMAX};

#[derive(Parser)]
#[command(name = "relhoch", version, about = "Exact relative Hochschild diagnostics for bimodules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a document and run its tasks.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Exit non-zero unless every task's `expect` matches and no task errors.
        #[arg(long)]
        assert: bool,
        /// Default degree bound for tasks without their own `nmax`.
        #[arg(long, default_value_t = DEFAULT_NMAX)]
        nmax: usize,
        /// Cap on the dimension of any intermediate tensor space.
        #[arg(long, env = "RELHOCH_DIM_CAP", default_value_t = relhoch::DEFAULT_DIM_CAP)]
        dim_cap: usize,
        /// Include wall-clock timings (makes the output non-reproducible).
        #[arg(long)]
        timings: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check {
            file,
            format,
            assert,
            nmax,
            dim_cap,
            timings,
        } => {
            let opts = RunOptions {
                nmax,
                dim_cap,
                timings,
            };
            let report = match run_file(&file, &opts) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(e.exit_code() as u8);
                }
            };
            match format {
                Format::Text => print!("{}", render::text(&report)),
                Format::Json => print!("{}", report.to_json_string()),
            }
            if assert && !report.all_expectations_met() {
                eprintln!("assertion failed");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
    }
}
