use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "overlap-lab",
    version,
    about = "Exact overlaps of projections of the four-corner Cantor set"
)]
pub struct Cli {
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true, env = "OVERLAP_LAB_JOBS")]
    pub jobs: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the artifact here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pgm,
    Svg,
    Text,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.to_possible_value().expect("no skipped variants");
        f.write_str(name.get_name())
    }
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Pair {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub p: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub q: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether C_{p/q} has an exact overlap.
    Classify(#[command(flatten)] Pair),

    /// Search for an explicit pair of colliding digit blocks.
    Witness {
        #[command(flatten)]
        pair: Pair,
        /// Search depth (default 2(p+q)+1, which is exhaustive).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_depth: Option<u64>,
        /// Show blocks as 0, 3t, 3, 3t+3.
        #[arg(long)]
        human: bool,
    },

    /// Cross-check every decision procedure on all coprime p < q with p + q ≤ max-sum.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
        max_sum: u64,
        /// Skip the matrix-rank procedure.
        #[arg(long)]
        no_rank: bool,
    },

    /// Count W, Ŵ and W̃ inside [1, N]² for each requested N.
    Density {
        #[arg(long = "N", value_delimiter = ',', required = true,
              value_parser = clap::value_parser!(u64).range(1..))]
        n: Vec<u64>,
    },

    /// Exact measure and dimension estimate of the level-n approximation.
    Measure {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
        level: u32,
    },

    /// Render W̃ ∩ [1, N]².
    Grid {
        #[arg(long = "N", value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
}
