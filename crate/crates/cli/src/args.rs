use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "sco", version, about = "Symmetric chain decompositions of quotients of Boolean lattices and chain products")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Search time limit in seconds.
    #[arg(long, default_value_t = 60.0, global = true)]
    pub timeout: f64,

    /// Largest poset handed to the exhaustive search.
    #[arg(long, default_value_t = sco_core::scd::SEARCH_CAP, global = true)]
    pub cap: usize,

    /// Write the main output here instead of stdout.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build and verify a decomposition.
    Build(BuildArgs),
    /// Re-verify a decomposition artifact.
    Verify { path: PathBuf },
    /// Reproduce a subgroup catalog.
    Catalog {
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Catalog TOML to use instead of the built-in one.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Search for a decomposition of an open-problem instance.
    Explore(ExploreArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("construction").required(true).args(["theorem1", "necklace", "theorem2"])))]
#[command(group(ArgGroup::new("base").args(["base_chain", "base_boolean"])))]
pub struct BuildArgs {
    /// B_{kt} / (K wr T).
    #[arg(long)]
    pub theorem1: bool,
    /// B_n / Z_n.
    #[arg(long)]
    pub necklace: bool,
    /// P^n / G for a base poset P.
    #[arg(long, visible_alias = "dhand")]
    pub theorem2: bool,

    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    /// Block group: cycle notation on k points, "S" or "A".
    #[arg(long = "K", default_value = "")]
    pub k_group: String,
    /// Top group in cycle notation on t points.
    #[arg(long = "T", default_value = "")]
    pub t_group: String,

    #[arg(long)]
    pub n: Option<usize>,
    /// Base poset: a chain with this many elements.
    #[arg(long)]
    pub base_chain: Option<usize>,
    /// Base poset: B_m.
    #[arg(long)]
    pub base_boolean: Option<usize>,
    /// Group permuting the n factors, in cycle notation.
    #[arg(long = "G", default_value = "")]
    pub g_group: String,
}

#[derive(Debug, Args)]
pub struct ExploreArgs {
    /// 1: B_n / D_2n. 2: L(k, t). 3: P^n / G for any G.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub problem: u8,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub base_chain: Option<usize>,
    #[arg(long)]
    pub base_boolean: Option<usize>,
    #[arg(long = "G", default_value = "")]
    pub g_group: String,
}
