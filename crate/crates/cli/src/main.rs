//! `qlefschetz`: command-line access to the q-intersection calculus.
//!
//! Exit codes: 0 on success, 1 when the input is well formed but fails
//! validation, 2 on usage or parse errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "qlefschetz",
    version,
    about = "Exact q-deformed Picard-Lefschetz computations"
)]
pub struct Cli {
    /// Dimension n: overrides the value stored in input files, and sets it
    /// for catalog constructions.
    #[arg(long = "n", global = true, allow_negative_numbers = true)]
    pub n: Option<i64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Load a fibration file and check that A and B are consistent.
    Verify { file: PathBuf },
    /// Compute a derived object.
    Compute {
        file: PathBuf,
        #[arg(value_enum)]
        what: Quantity,
    },
    /// Kernel classes, sphere test and Betti bounds.
    Obstruct { file: PathBuf },
    /// Apply a basis change and emit the new fibration file.
    Move {
        file: PathBuf,
        #[command(subcommand)]
        kind: MoveKind,
        /// Also write the transition matrix C (new A = C* A C) to this file.
        #[arg(long, global = true)]
        transition: Option<PathBuf>,
    },
    /// Apply a word of Dehn twists to a class.
    Twist {
        file: PathBuf,
        /// JSON list of twisting classes.
        #[arg(long)]
        generators: PathBuf,
        /// Twist word such as "t2 t1^-1 t4", rightmost letter first.
        #[arg(long)]
        word: String,
        /// 1-based index of the generator to start from.
        #[arg(long, conflicts_with = "target", required_unless_present = "target")]
        seed: Option<usize>,
        /// JSON class to start from.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Generate worked examples.
    Catalog {
        #[command(subcommand)]
        which: CatalogKind,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    Det,
    Nullspace,
    Monodromy,
    Givental,
    Classical,
    DoubleCover,
}

#[derive(Subcommand, Debug)]
pub enum MoveKind {
    Hurwitz {
        /// 1-based position; swaps objects k and k+1.
        #[arg(long)]
        k: usize,
    },
    HurwitzInverse {
        #[arg(long)]
        k: usize,
    },
    Rescale {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_negative_numbers = true)]
        shift: i64,
    },
    Shift {
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogKind {
    /// Mukai pairing of the A_r Milnor fibre, in the fibre dimension n - 1.
    Milnor {
        #[arg(long)]
        r: usize,
    },
    /// The hypersurface X_{a,b}.
    Xab {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// The mirror of the projective plane.
    MirrorP2,
    /// Build a total space from classes in a fibre.
    Induce {
        #[arg(long)]
        fibre: PathBuf,
        #[arg(long)]
        classes: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
