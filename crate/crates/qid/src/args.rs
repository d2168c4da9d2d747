use std::num::NonZeroUsize;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use qid_core::algebra::Rational;
use qid_core::identities::{IdentityId, Mutation};

use crate::range::ParamRange;
use crate::run::Format;

/// Exact verification of q-series identities and Newton/Lagrange interpolation.
#[derive(Debug, Parser)]
#[command(name = "qid", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json-lines")]
    pub format: Format,

    /// Number of worker threads; overrides QID_PARALLELISM.
    #[arg(long, global = true)]
    pub parallelism: Option<NonZeroUsize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify one identity over ranges of its parameters.
    Verify {
        /// van-hamme, uchimura, dilcher, prodinger, proposition1,
        /// proposition1-m-eq-n, uchimura-generalized, newton-lagrange, eq8-x1, power-sum.
        identity: IdentityId,

        /// Size n, as `A` or `A..B`.
        #[arg(long)]
        n: Option<ParamRange>,

        /// Parameter m; endpoints may refer to n, as in `n-1..n+4`.
        #[arg(long)]
        m: Option<ParamRange>,

        /// Prodinger index M; endpoints may refer to n, as in `0..n`.
        #[arg(long = "M")]
        big_m: Option<ParamRange>,

        /// Alphabet file for the interpolation identities.
        #[arg(long)]
        points: Option<PathBuf>,

        /// Fix a symbol, as `a=1/2`.
        #[arg(long = "set", value_name = "SYMBOL=VALUE")]
        symbols: Vec<String>,

        #[arg(long, hide = true)]
        mutate: Option<Mutation>,
    },

    /// Run the full verification matrix.
    Sweep {
        target: SweepTarget,

        /// Reduced ranges (n ≤ 8).
        #[arg(long)]
        quick: bool,
    },

    /// Newton and Lagrange interpolants through the given points.
    Interp {
        #[arg(long)]
        points: PathBuf,

        #[arg(long)]
        values: PathBuf,

        /// Evaluate the interpolant here.
        #[arg(long)]
        at: Option<Rational>,
    },

    /// Print both canonical sides of one instance.
    Table {
        table: TableKind,

        #[arg(long)]
        n: u32,

        #[arg(long)]
        m: i64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepTarget {
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Dilcher,
}
