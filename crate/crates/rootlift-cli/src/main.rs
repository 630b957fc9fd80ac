//! `rootlift` command-line front end.

mod commands;
mod input;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rootlift::verify::DEFAULT_SEED;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("infeasible: {0}")]
    Bound(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Json(_) | CliError::Input(_) => 2,
            CliError::Bound(_) => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "rootlift", version, about = "Lifting obstructions through central torus extensions")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "table", global = true)]
    format: Format,
    /// Seed for randomized checks; recorded in every report.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a family of Hodge cocharacters lifts to the extension.
    LiftCheck {
        /// Built-in name such as C2.sc, or a root datum JSON file.
        #[arg(long)]
        group: String,
        /// `gm` for the minimal extension, or a JSON embedding matrix.
        #[arg(long, default_value = "gm")]
        tilde: String,
        #[arg(long, value_enum, default_value = "totally-real")]
        mode: ModeArg,
        #[arg(long)]
        hodge: String,
    },
    /// Lift archimedean parameters along the extension.
    ParamLift {
        #[arg(long, default_value = "A1.sc")]
        group: String,
        #[arg(long, default_value = "gm")]
        tilde: String,
        #[arg(long, value_enum)]
        recipe: RecipeArg,
        #[arg(long)]
        tempered: bool,
        params: String,
    },
    /// Center and 2-torsion of every simply connected simple type.
    ClassifySimpleTypes {
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
    },
    /// Lift a cocharacter through a torus quotient.
    TorusLift {
        /// Cocharacter map as a JSON matrix, e.g. '[[2, 3]]'.
        #[arg(long)]
        coch: String,
        #[arg(long)]
        lambda: String,
    },
    /// Type A and finite-order extension of a character of mu_n(F_inf).
    HeckeFeasible {
        /// cm:P, totally-real:D, imaginary:PxF or a JSON file.
        #[arg(long)]
        data: String,
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: String,
    },
    /// Whether HT weights k/n are realized by an algebraic Galois character.
    GaloisCharFeasible {
        #[arg(long)]
        data: String,
        #[arg(long)]
        n: i64,
        #[arg(long)]
        k: String,
    },
    /// Weights of a spin or half-spin representation.
    SpinWeights {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "D")]
        family: String,
        #[arg(long, default_value = "both")]
        half: String,
        #[arg(long, default_value_t = 20)]
        max_spin_rank: usize,
    },
    /// Spin branching: so{cd} to so{c}^{d}, so{a+t} to so{a}xso{t}, or so{2cd} to gl{c}^{d}.
    Branch {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = rootlift::weights::DEFAULT_SPIN_BOUND_LOG2)]
        max_spin_log2: u32,
    },
    /// Exterior algebra identity for Sp_2g and the spin pullback.
    PlethysmCheck {
        #[arg(long)]
        g: usize,
        #[arg(long, default_value_t = rootlift::weights::DEFAULT_MAX_PLETHYSM_G)]
        max_g: usize,
    },
    /// Weyl dimension of an irreducible representation.
    Dim {
        #[arg(long, conflicts_with = "sp")]
        group: Option<String>,
        /// Highest weight, e.g. '[1, 0]' or '["1/2", "1/2"]'.
        #[arg(long, requires = "group")]
        lambda: Option<String>,
        /// Sp_2g with highest weight (g-1, ..., 1, 0).
        #[arg(long)]
        sp: Option<usize>,
        /// Also count weights with Freudenthal's formula.
        #[arg(long)]
        freudenthal: bool,
    },
    /// Rank, signature, discriminant and Hasse symbols of a rational quadratic form.
    QformInvariants {
        gram: Option<String>,
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long, default_value_t = 2)]
        q_eta: i64,
    },
    /// Whether the even Clifford algebra of an odd-rank form is a matrix algebra.
    CliffordSplit {
        gram: Option<String>,
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long, default_value_t = 2)]
        q_eta: i64,
    },
    /// Local conjugacy versus global twist-equivalence for two Heisenberg representations.
    HeisenbergDemo {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        alpha: u64,
        #[arg(long)]
        beta: u64,
    },
    /// Run every acceptance check with timing.
    VerifyPaper {
        /// Restrict to these check ids.
        #[arg(long)]
        only: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    TotallyReal,
    Imaginary,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RecipeArg {
    #[value(name = "cm-typeA", alias = "cm-type-a")]
    CmTypeA,
    FiniteOrder,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::dispatch(&cli.command, cli.seed) {
        Ok(out) => {
            match cli.format {
                Format::Json => {
                    let wrapped = serde_json::json!({
                        "command": out.command,
                        "seed": cli.seed,
                        "ok": out.ok,
                        "report": out.report,
                    });
                    println!("{}", serde_json::to_string_pretty(&wrapped).expect("report serializes"));
                }
                Format::Table => {
                    println!("{} (seed {})", out.command, cli.seed);
                    print!("{}", out.table);
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
