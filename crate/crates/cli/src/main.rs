//! `nabla`: command-line front end for the counting, recurrence and
//! calculus engines.
//!
//! Exit codes: 0 success, 1 computation or domain failure, 2 usage or parse
//! failure.

mod commands;
mod render;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyScope {
    Counting,
    Recurrence,
    Calculus,
    All,
}

#[derive(Debug, Parser)]
#[command(
    name = "nabla",
    version,
    about = "Count, classify and verify compositions of ∇_1..∇_n on R^n"
)]
pub struct Cli {
    /// Output format; `count` defaults to plain, every other command to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,

    /// Largest dimension accepted by the counting and recurrence commands.
    #[arg(long, global = true, default_value_t = 64)]
    pub max_n: usize,

    /// Largest number of words `enumerate` will list.
    #[arg(long, global = true, env = "NABLA_ENUM_CAP", default_value_t = nabla_core::DEFAULT_ENUMERATION_CAP)]
    pub enum_cap: usize,

    /// Largest dimension accepted by `apply`.
    #[arg(
        long,
        global = true,
        env = "NABLA_SYMBOLIC_MAX_N",
        default_value_t = 12
    )]
    pub symbolic_max_n: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of meaningful compositions of order k.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// f(1), ..., f(k_max).
    Sequence {
        #[arg(long)]
        n: usize,
        #[arg(long = "k-max")]
        k_max: usize,
    },
    /// Minimal recurrence and characteristic polynomial for dimension n.
    Recurrence {
        #[arg(long)]
        n: usize,
    },
    /// List meaningful words of a given length.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        length: usize,
        /// Keep only non-trivial words.
        #[arg(long)]
        nontrivial: bool,
    },
    /// Apply a word (application order, comma separated) to a component vector.
    Apply {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        word: Vec<usize>,
        /// Polynomials in slot order, e.g. "[x1*x2]" or '["x1","x2^2","0"]'.
        #[arg(long)]
        input: String,
    },
    /// Run the built-in oracle suites.
    Verify {
        #[arg(long, value_enum, default_value_t = VerifyScope::All)]
        scope: VerifyScope,
    },
}

/// A failed command: exit code plus message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<nabla_core::Error> for Failure {
    fn from(e: nabla_core::Error) -> Self {
        let code = match e {
            nabla_core::Error::Parse(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            if let Some(err) = out.stderr {
                eprintln!("{err}");
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
