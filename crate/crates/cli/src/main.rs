//! `wreath`: verifies generating sets of `R(S_n(G))` and queries the ring.

mod commands;
mod config;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{GroupArgs, NRange};

#[derive(Parser)]
#[command(
    name = "wreath",
    version,
    about = "Exact computations in representation rings of wreath products S_n(G)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a generator family generates R(S_n(G)) over Z.
    Verify(VerifyArgs),
    /// Decompose a tensor product of two irreducibles.
    Decompose(DecomposeArgs),
    /// Unimodularity of the e/h transition matrices of the graded ring.
    GradedCheck(GradedArgs),
    /// Onsets of the stable-range relations for pairs of stable labels.
    Stability(StabilityArgs),
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args)]
pub struct Common {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, env = "WREATH_JOBS")]
    pub jobs: Option<usize>,
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum GenSource {
    /// The family named by --theorem.
    #[default]
    Theorem,
    /// The elements listed in --gen-list.
    Custom,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UnitFlavor {
    Hook,
    TwoRow,
    Both,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub n: NRange,
    /// marin-hooks, marin-two-row, 4.1, 4.2 or 4.3.
    #[arg(long)]
    pub theorem: Option<String>,
    #[arg(long, value_enum, default_value_t = GenSource::Theorem)]
    pub gens: GenSource,
    /// `;`-separated elements such as `1; ((1),(1)); 2*((2),∅)`, where `1` is the unit.
    #[arg(long, required_if_eq("gens", "custom"))]
    pub gen_list: Option<String>,
    /// ε-choice for theorem 4.1, e.g. `chi:sign,V:triv`, or `all`.
    #[arg(long)]
    pub eps: Option<String>,
    /// Unit-object shapes for theorem 4.1.
    #[arg(long, value_enum, default_value_t = UnitFlavor::Hook)]
    pub unit_flavor: UnitFlavor,
}

#[derive(Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub n: usize,
    /// Left factor, e.g. `((1),(1))`.
    pub a: String,
    /// Right factor.
    pub b: String,
}

#[derive(Args)]
pub struct GradedArgs {
    #[command(flatten)]
    pub common: Common,
    /// One of e or h per irreducible of G, comma-separated, or `all`.
    #[arg(long)]
    pub flavors: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub degree: usize,
}

#[derive(Args)]
pub struct StabilityArgs {
    #[command(flatten)]
    pub common: Common,
    /// Stable label λ; with --mu omitted too, every pair within --bound is checked.
    #[arg(long, requires = "mu")]
    pub lambda: Option<String>,
    #[arg(long, requires = "lambda")]
    pub mu: Option<String>,
    /// Largest |λ| + |μ|.
    #[arg(long, default_value_t = 2)]
    pub bound: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => commands::verify(&args),
        Command::Decompose(args) => commands::decompose(&args),
        Command::GradedCheck(args) => commands::graded_check(&args),
        Command::Stability(args) => commands::stability(&args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
