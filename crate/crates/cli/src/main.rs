use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::{error, info};
use modinv_cli::catalog::lookup;
use modinv_cli::report::render;
use modinv_cli::verify::{summary_lines, verify, verify_report};
use modinv_cli::{limits_from_env, parse_config, run, CliError, Command, RunConfig};

#[derive(Parser)]
#[command(name = "modinv", version, about = "Modular invariant rings and their homological diagnostics")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args)]
struct Source {
    /// Configuration file in the `key = value` format.
    #[arg(long, conflicts_with = "example")]
    config: Option<PathBuf>,
    /// Name of a built-in example (bertin, swap2, cyc3_f3, s3_f2, trivial4, cyc3_f2).
    #[arg(long)]
    example: Option<String>,
}

#[derive(Subcommand)]
enum Sub {
    /// Close the generators to a group and report its order.
    Group(Source),
    /// Fundamental invariants up to the degree bound.
    Invariants(Source),
    /// Presentation S'/I of the invariant ring.
    Present(Source),
    /// Depth, Serre conditions, local cohomology and loci.
    Diagnose(Source),
    /// Grade and height of the configured ideal.
    Grade(Source),
    /// Height of the image of the transfer.
    Transfer(Source),
    /// Run the acceptance suite over the built-in examples.
    Verify {
        /// Run a single criterion, by number or name.
        #[arg(long)]
        only: Option<String>,
    },
}

fn load(source: &Source) -> Result<RunConfig, CliError> {
    let mut config = match (&source.config, &source.example) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            parse_config(&text)?
        }
        (None, Some(name)) => lookup(name)?,
        (None, None) => return Err(CliError::Validation("pass --config <file> or --example <name>".into())),
    };
    config.caps = limits_from_env(config.caps)?;
    Ok(config)
}

fn execute(cli: Cli) -> Result<bool, CliError> {
    let (command, source) = match cli.command {
        Sub::Verify { only } => {
            let outcome = verify(only.as_deref(), true)?;
            for line in summary_lines(&outcome) {
                eprintln!("{line}");
            }
            print!("{}", render(&verify_report(&outcome)));
            return Ok(outcome.passed());
        }
        Sub::Group(s) => (Command::Group, s),
        Sub::Invariants(s) => (Command::Invariants, s),
        Sub::Present(s) => (Command::Present, s),
        Sub::Diagnose(s) => (Command::Diagnose, s),
        Sub::Grade(s) => (Command::Grade, s),
        Sub::Transfer(s) => (Command::Transfer, s),
    };
    let config = load(&source)?;
    if let Some(c) = config.command.filter(|c| *c != command) {
        info!("command line `{command}` overrides configured command `{c}`");
    }
    print!("{}", render(&run(&config, command)?));
    Ok(true)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            error!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
