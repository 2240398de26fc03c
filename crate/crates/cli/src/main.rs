//! Batch CLI for exact mixed Witt ring computations: orderings, splitting
//! partitions, signature tables, mixed products, reference forms,
//! polarizations and spectrum reports, with JSON or plain-table output.
//!
//! Exit codes: 0 success, 2 validation error, 3 search budget exceeded,
//! 4 parse error.

mod commands;
mod workspace;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Budget(String),
    Parse(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Parse(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Budget(m) | CliError::Parse(m) => m,
        }
    }
}

#[derive(Args, Debug, Clone, Copy)]
pub struct OutputMode {
    /// Emit machine-readable JSON
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,
    /// Emit a plain text table (default)
    #[arg(long, global = true)]
    table: bool,
}

impl OutputMode {
    pub fn is_json(&self) -> bool {
        self.json
    }
}

#[derive(Parser, Debug)]
#[command(name = "wittq", version, about = "Exact mixed Witt ring computations for quaternion algebras over real number fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputMode,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the orderings (real embeddings) of a number field
    Orderings {
        /// Minimal polynomial in t, e.g. "t^2-2"
        #[arg(long)]
        poly: String,
    },
    /// Partition the orderings by the splitting of a quaternion algebra
    Partition {
        #[arg(long, default_value = "t")]
        poly: String,
        /// Symbol slots "a,b" as element expressions
        #[arg(long, allow_hyphen_values = true)]
        symbol: String,
    },
    /// Quadratic form operations
    Witt {
        #[command(subcommand)]
        cmd: WittCmd,
    },
    /// Quaternion arithmetic
    Quat {
        #[command(subcommand)]
        cmd: QuatCmd,
    },
    /// Mixed Witt ring operations on workspace forms
    Mixed {
        #[command(subcommand)]
        cmd: MixedCmd,
    },
    /// Signature table of workspace forms at every ordering
    SignTable {
        #[arg(long)]
        workspace: PathBuf,
        /// Comma-separated form names (row order)
        #[arg(long)]
        forms: String,
        /// "pair", "ref:<form>", or the name of a workspace polarization
        #[arg(long, default_value = "pair")]
        pol: String,
        /// Candidate budget for the automatic reference search
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Reference form operations
    Reference {
        #[command(subcommand)]
        cmd: ReferenceCmd,
    },
    /// Polarization constructions
    Polarize {
        #[command(subcommand)]
        cmd: PolarizeCmd,
    },
    /// Spectrum report: labeled prime ideals and the double cover
    Spectrum {
        #[arg(long)]
        workspace: PathBuf,
        /// Comma-separated odd primes, e.g. "3,5"
        #[arg(long, default_value = "")]
        primes: String,
    },
}

#[derive(Subcommand, Debug)]
enum WittCmd {
    /// Signatures of a diagonal form at every ordering
    Sig {
        #[arg(long, default_value = "t")]
        poly: String,
        /// Comma-separated diagonal entries, e.g. "1,-1,t"
        #[arg(long, allow_hyphen_values = true)]
        form: String,
    },
    /// Exact Witt-class equality over Q
    Equal {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        #[arg(long, allow_hyphen_values = true)]
        form2: String,
    },
    /// Expand a Pfister form from its slots
    Pfister {
        #[arg(long, default_value = "t")]
        poly: String,
        /// Comma-separated slots
        #[arg(long, allow_hyphen_values = true)]
        slots: String,
    },
}

#[derive(Subcommand, Debug)]
enum QuatCmd {
    /// Multiply two quaternions "x0,x1,x2,x3"
    Mul {
        #[arg(long, default_value = "t")]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        symbol: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Slot decomposition [Q] = (z^2, c) for an invertible pure quaternion
    Slot {
        #[arg(long, default_value = "t")]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        symbol: String,
        /// Pure quaternion "0,x1,x2,x3"
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
}

#[derive(Subcommand, Debug)]
enum MixedCmd {
    /// Product of two named workspace forms
    Mul {
        #[arg(long)]
        workspace: PathBuf,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Reduced dimension mod 2 of a named workspace form
    Rdim2 {
        #[arg(long)]
        workspace: PathBuf,
        #[arg(long)]
        form: String,
    },
}

#[derive(Subcommand, Debug)]
enum ReferenceCmd {
    /// Search for a reference form covering the split orderings
    Find {
        #[arg(long, default_value = "t")]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        symbol: String,
        #[arg(long)]
        budget: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum PolarizeCmd {
    /// Principal polarization of a named workspace form
    Principal {
        #[arg(long)]
        workspace: PathBuf,
        #[arg(long)]
        form: String,
        #[arg(long)]
        budget: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mode = cli.output;
    let result = match cli.command {
        Command::Orderings { poly } => commands::orderings(&poly, mode),
        Command::Partition { poly, symbol } => commands::partition(&poly, &symbol, mode),
        Command::Witt { cmd } => match cmd {
            WittCmd::Sig { poly, form } => commands::witt_sig(&poly, &form, mode),
            WittCmd::Equal { form, form2 } => commands::witt_equal(&form, &form2, mode),
            WittCmd::Pfister { poly, slots } => commands::witt_pfister(&poly, &slots, mode),
        },
        Command::Quat { cmd } => match cmd {
            QuatCmd::Mul { poly, symbol, x, y } => commands::quat_mul(&poly, &symbol, &x, &y, mode),
            QuatCmd::Slot { poly, symbol, z } => commands::quat_slot(&poly, &symbol, &z, mode),
        },
        Command::Mixed { cmd } => match cmd {
            MixedCmd::Mul { workspace, lhs, rhs } => commands::mixed_mul(&workspace, &lhs, &rhs, mode),
            MixedCmd::Rdim2 { workspace, form } => commands::mixed_rdim2(&workspace, &form, mode),
        },
        Command::SignTable {
            workspace,
            forms,
            pol,
            budget,
        } => commands::sign_table(&workspace, &forms, &pol, budget, mode),
        Command::Reference { cmd } => match cmd {
            ReferenceCmd::Find { poly, symbol, budget } => {
                commands::reference_find(&poly, &symbol, budget, mode)
            }
        },
        Command::Polarize { cmd } => match cmd {
            PolarizeCmd::Principal {
                workspace,
                form,
                budget,
            } => commands::polarize_principal(&workspace, &form, budget, mode),
        },
        Command::Spectrum { workspace, primes } => commands::spectrum(&workspace, &primes, mode),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
