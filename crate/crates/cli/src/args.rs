use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "symdyn",
    version,
    about = "Exact checks for a symbolic-dynamics construction"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for range verifications.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelName {
    /// The recursive construction: x, y, closing(1), closing(2).
    #[value(alias = "s7")]
    Construction,
    /// The block family over {0,1,2}: two sampled members and 0^inf.
    #[value(alias = "ex2")]
    BlockFamily,
    /// The growing-zeros system.
    #[value(alias = "ex3")]
    GrowingZeros,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Eqp,
    Evp,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Table of |C_n|, |Q_n|, |W_n| and their running sums for 0..=n.
    Lengths {
        #[arg(long, default_value_t = 5)]
        n: u32,
    },
    /// Exact length inequalities and the hitting-order chain.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// First t >= 0 with shift(point, t) in the cylinder.
    Tau {
        #[arg(long, default_value = "x")]
        point: String,
        #[arg(long)]
        cylinder: String,
        #[arg(long, default_value = "10000")]
        horizon: String,
    },
    /// Refutation certificates, validated by simulation.
    #[command(subcommand)]
    Witness(WitnessCmd),
    /// Finite-horizon pair checks.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Hitting times N(U,V), or splitting times with --entourage.
    Hitting {
        #[arg(long, value_enum, default_value_t = ModelName::Construction)]
        model: ModelName,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long, default_value_t = 10_000)]
        horizon: u64,
        #[arg(long)]
        entourage: Option<u32>,
        #[arg(long, default_value_t = 10_000)]
        depth: u64,
    },
    /// Periodic words whose repetitions survive in the sampled generators.
    PeriodicScan {
        #[arg(long, value_enum, default_value_t = ModelName::Construction)]
        model: ModelName,
        #[arg(long, default_value_t = 4)]
        max_period: usize,
        #[arg(long, default_value_t = 10_000)]
        horizon: u64,
        #[arg(long, default_value_t = 10_000)]
        depth: u64,
    },
    /// The piecewise-linear interval map.
    #[command(subcommand)]
    Interval(IntervalCmd),
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    Claim1 {
        #[arg(long, default_value_t = 64)]
        n_max: u32,
    },
    /// One (n, k), or every pair with n + k <= --sum-max.
    Corollary {
        #[arg(long, default_value_t = 0, conflicts_with = "sum_max")]
        n: u32,
        #[arg(long, default_value_t = 0, conflicts_with = "sum_max")]
        k: u32,
        #[arg(long)]
        sum_max: Option<u32>,
    },
    OnePart {
        #[arg(long, default_value_t = 64)]
        n_max: u32,
    },
    HittingOrder {
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 6)]
        k_max: u32,
    },
}

#[derive(Args, Debug)]
pub struct ValidateFlag {
    /// Include the checked facts in the report.
    #[arg(long)]
    pub validate: bool,
}

#[derive(Subcommand, Debug)]
pub enum WitnessCmd {
    #[command(name = "evp-x-10inf")]
    EvpX10inf {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        l: u32,
        #[command(flatten)]
        v: ValidateFlag,
    },
    EqpYZero {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        v: ValidateFlag,
    },
    EqpYOne {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        v: ValidateFlag,
    },
    EqpYGeneral {
        /// Binary digits such as 10, or an RLE word as JSON.
        #[arg(long)]
        prefix: String,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        v: ValidateFlag,
    },
    /// Growing-zeros system: (x, 0^inf) fails the equicontinuity condition.
    EqpGrowingZeros {
        #[arg(long, default_value_t = 4)]
        u_depth: u64,
        #[arg(long, default_value_t = 1)]
        v_depth: u64,
        #[command(flatten)]
        v: ValidateFlag,
    },
}

#[derive(Subcommand, Debug)]
pub enum CheckCmd {
    /// Search (U, V) up to --uv-depth, or test one candidate with --u-depth/--v-depth.
    Pair {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_enum, default_value_t = ModelName::Construction)]
        model: ModelName,
        #[arg(long, default_value = "x")]
        x: String,
        #[arg(long, default_value = "zero")]
        y: String,
        #[arg(long, default_value_t = 2)]
        o_depth: u32,
        #[arg(long, default_value_t = 4)]
        uv_depth: u32,
        #[arg(long, requires = "v_depth")]
        u_depth: Option<u32>,
        #[arg(long, requires = "u_depth")]
        v_depth: Option<u32>,
        #[arg(long, default_value_t = 10_000)]
        horizon: u64,
        #[arg(long, default_value_t = 10_000)]
        depth: u64,
    },
    /// Whether [x prefix] stops returning to [y prefix].
    Trivial {
        #[arg(long, value_enum, default_value_t = ModelName::Construction)]
        model: ModelName,
        #[arg(long, default_value = "x")]
        x: String,
        #[arg(long, default_value = "10inf")]
        y: String,
        #[arg(long, default_value_t = 1)]
        prefix_depth: u32,
        #[arg(long, default_value_t = 10_000)]
        horizon: u64,
        #[arg(long, default_value_t = 10_000)]
        depth: u64,
    },
    /// Even-continuity evidence for (x, 0^inf) with U = [C_0..C_n], V = O = [0^n].
    EvpXZero {
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, default_value_t = 10_000)]
        horizon: u64,
        #[arg(long, default_value_t = 10_000)]
        depth: u64,
    },
    /// Block family: membership in [0^n] is the same for every sampled member.
    Members {
        #[arg(long, default_value_t = 3)]
        n: u64,
        #[arg(long, default_value_t = 2)]
        count: usize,
        #[arg(long, default_value_t = 10_000)]
        horizon: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum IntervalCmd {
    Eval {
        #[arg(long)]
        x: String,
    },
    Orbit {
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    Constant {
        #[arg(long)]
        lo: String,
        #[arg(long)]
        hi: String,
    },
    Invariant {
        #[arg(long)]
        lo: String,
        #[arg(long)]
        hi: String,
    },
    /// Left and right values at every breakpoint.
    Breakpoints,
    Eventual {
        #[arg(long)]
        x: String,
        #[arg(long, default_value = "1/1000")]
        eps: String,
        #[arg(long, default_value = "1/4")]
        delta: String,
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        #[arg(long, default_value_t = 64)]
        k_max: usize,
        #[arg(long, default_value = "1048576")]
        grid: String,
    },
    /// Evenly spaced samples of the graph; CSV in text format.
    Plot {
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
}
