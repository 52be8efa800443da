//! `qawa`: evaluate expressions and run verification suites from the shell.
//!
//! Exit status: 0 on success, 1 when a suite or validation fails, 2 on
//! usage or input errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qawa::Scalar;

#[derive(Parser)]
#[command(name = "qawa", version, about = "Exact arithmetic in quantum affine wreath algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in superalgebras.
    Presets(OutArgs),
    /// Load and validate an algebra (and optionally f).
    ValidateSpec {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Cyclotomic polynomial: a path or inline JSON.
        #[arg(long)]
        f: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Evaluate an expression to normal form.
    Eval {
        #[command(flatten)]
        ctx: ContextArgs,
        /// Also print the right normal form `T_w a X^λ`.
        #[arg(long)]
        right_form: bool,
        /// Infix text, a JSON tree, a JSON term list, or @PATH.
        expr: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run the verification suites.
    Suite {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random samples per sampled property.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Disable the thread pool.
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Gram matrix of the trace form on the cyclotomic basis.
    Gram {
        #[command(flatten)]
        ctx: ContextArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Bimodule dimension count for the tower `H_n^f ⊂ H_{n+1}^f`.
    MackeyDims {
        #[command(flatten)]
        ctx: ContextArgs,
        /// Also compute the ranks of both summands inside `H_{n+1}^f`.
        #[arg(long)]
        ranks: bool,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct AlgebraArgs {
    /// Built-in algebra name.
    #[arg(long)]
    preset: Option<String>,
    /// Path to an algebra JSON file.
    #[arg(long)]
    spec: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct ContextArgs {
    #[command(flatten)]
    alg: AlgebraArgs,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=8))]
    n: u64,
    #[arg(long, default_value = "1", value_parser = parse_scalar)]
    z: Scalar,
    /// Cyclotomic polynomial: a path or inline JSON `{"d":..,"coeffs":[..]}`.
    #[arg(long)]
    f: Option<String>,
}

#[derive(Args, Clone)]
struct OutArgs {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_scalar(s: &str) -> Result<Scalar, String> {
    s.parse().map_err(|e: qawa::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
