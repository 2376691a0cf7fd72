mod commands;
mod corpus;
mod input;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use subword_core::{CoxeterError, SubwordError};

use input::InstanceArgs;

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Core(SubwordError),
    Io(String),
}

impl From<SubwordError> for CliError {
    fn from(e: SubwordError) -> Self {
        CliError::Core(e)
    }
}

impl From<CoxeterError> for CliError {
    fn from(e: CoxeterError) -> Self {
        CliError::Core(e.into())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) | CliError::Io(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Takeuchi,
    Free,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Hopf,
    Decomposition,
    ClusterFlat,
    #[value(name = "appendixA", alias = "appendix-a")]
    AppendixA,
    AntipodeAgreement,
}

/// Subword complexes, their flats, and the Hopf algebra they span.
#[derive(Parser, Debug)]
#[command(name = "subword", version)]
pub struct Cli {
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List all facets.
    Facets(InstanceArgs),
    /// Root function of a facet.
    Rootfn(InstanceArgs),
    /// Flip a facet at a position.
    Flip {
        #[command(flatten)]
        args: InstanceArgs,
        /// 1-based position in the facet.
        #[arg(long)]
        position: usize,
    },
    /// All flats of the root function of a facet.
    Flats(InstanceArgs),
    /// Restrict a tuple to a flat.
    Restrict {
        #[command(flatten)]
        args: InstanceArgs,
        /// 1-based positions J of the flat.
        #[arg(long)]
        flat: String,
    },
    /// Coproduct of a basis key.
    Coproduct(InstanceArgs),
    /// Antipode of a basis key.
    Antipode {
        #[command(flatten)]
        args: InstanceArgs,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
    },
    /// Product of basis keys, each a JSON file or inline object.
    Product {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// The c-cluster complex `SC(c w0(c), w0)`.
    Cluster {
        #[arg(long = "type")]
        ty: String,
        /// Coxeter element as a word in all generators.
        #[arg(long)]
        c: String,
    },
    /// Rotate `(q1, ..., qr)` to `(q2, ..., qr, w0 q1 w0)`.
    Rotate {
        #[command(flatten)]
        args: InstanceArgs,
        /// Use `c w0(c)` instead of `--word`.
        #[arg(long)]
        c: Option<String>,
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        args: InstanceArgs,
        #[arg(long)]
        c: Option<String>,
        /// Suite-specific size bound.
        #[arg(long)]
        size: Option<usize>,
    },
    /// Iterate the top-to-random operator.
    Chip {
        #[command(flatten)]
        args: InstanceArgs,
        #[arg(long, default_value_t = 10)]
        iterations: usize,
    },
    /// Write the example fixtures to a directory.
    Corpus { dir: std::path::PathBuf },
}

/// Result of a command: JSON payload, text rendering, and whether it verified.
pub struct Output {
    pub json: serde_json::Value,
    pub text: String,
    pub ok: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("JSON values serialize")
                ),
                Format::Text => print!("{}", out.text),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
