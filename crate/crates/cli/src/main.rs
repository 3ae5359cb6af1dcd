mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Exit codes: 0 success, 1 validation failure, 2 I/O or environment
/// failure.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Validation(_) => ExitCode::from(1),
            CliError::Io(_) => ExitCode::from(2),
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Io(m) => m,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Human-readable tables, distances rounded to 4 decimals.
    Table,
    /// Machine-readable JSON with full-precision distances.
    Document,
}

#[derive(Parser)]
#[command(name = "qosbroker", version, about = "QoS-aware service registry and matchmaking broker")]
struct Cli {
    /// Registry store file.
    #[arg(long, global = true, env = "QOS_STORE", default_value = "./registry.qos")]
    store: PathBuf,

    #[arg(long, global = true, value_enum, default_value = "table")]
    output: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Register every service in a store document, all or nothing.
    Register { file: PathBuf },
    /// Rank registered services against a match request file.
    Match {
        file: PathBuf,
        /// Result cap, overriding the request's top_k.
        #[arg(long = "top")]
        top: Option<usize>,
        /// Append per-dimension contribution tables.
        #[arg(long)]
        explain: bool,
    },
    /// Run one match per named weight scheme and compare the rankings.
    Compare {
        request: PathBuf,
        /// File listing named weight schemes.
        #[arg(long)]
        weights: PathBuf,
    },
    /// Serve the HTTP API.
    Serve {
        #[arg(long, env = "QOS_ADDR", default_value = "127.0.0.1:8080")]
        addr: String,
        /// Store file, overriding the global --store.
        #[arg(long)]
        store: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Register { file } => commands::register(&cli.store, &file),
        Command::Match { file, top, explain } => {
            commands::run_match(&cli.store, &file, top, explain, cli.output)
        }
        Command::Compare { request, weights } => {
            commands::compare(&cli.store, &request, &weights, cli.output)
        }
        Command::Serve { addr, store } => {
            commands::serve(store.as_ref().unwrap_or(&cli.store), &addr)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            err.exit_code()
        }
    }
}
