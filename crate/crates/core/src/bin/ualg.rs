use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ultranorm::analysis::{run_analysis, Options, CHECKS};
use ultranorm::{AlgebraSpec, Error};

#[derive(Parser)]
#[command(
    name = "ualg",
    version,
    about = "Structure analysis of finite-dimensional algebras over Q_p"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run checks on an `.alg` file and print a report.
    Analyze {
        file: PathBuf,
        /// Comma-separated subset of checks (default: all).
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        #[arg(long, env = "UALG_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 32)]
        precision: u32,
        #[arg(long, default_value_t = 200)]
        budget: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Parse and build an `.alg` file without running checks.
    Validate { file: PathBuf },
    /// List the available checks.
    Checks,
}

fn input_error(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(match e {
        Error::PrecisionExhausted(_) => 3,
        _ => 2,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Checks => {
            for c in CHECKS {
                println!("{c}");
            }
            ExitCode::SUCCESS
        }
        Command::Validate { file } => {
            let built = AlgebraSpec::read(&file).and_then(|s| s.build(None).map(|a| (s, a)));
            match built {
                Ok((s, a)) => {
                    println!(
                        "{}: dim {} over Q_{}, rescale {}",
                        s.name,
                        a.dim(),
                        s.prime,
                        a.rescale()
                    );
                    ExitCode::SUCCESS
                }
                Err(e) => input_error(&e),
            }
        }
        Command::Analyze {
            file,
            checks,
            seed,
            precision,
            budget,
            report,
            format,
        } => {
            let spec = match AlgebraSpec::read(&file) {
                Ok(s) => s,
                Err(e) => return input_error(&e),
            };
            let opts = Options {
                checks: checks.unwrap_or_else(|| CHECKS.iter().map(|s| s.to_string()).collect()),
                seed,
                precision,
                budget,
            };
            let r = match run_analysis(&spec, &opts) {
                Ok(r) => r,
                Err(e) => return input_error(&e),
            };
            let text = match format {
                Format::Json => r.to_json(),
                Format::Text => r.to_text(),
            };
            match report {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(r.exit_code() as u8)
        }
    }
}
