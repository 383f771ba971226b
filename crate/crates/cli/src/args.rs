use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{Format, Overrides};

#[derive(Parser, Debug)]
#[command(name = "sdl", version, about = "Small divisors, foliated cohomology and the Kronecker counterexample")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Global {
    /// Significant digits of rendered decimals [default: 50, or SDL_PRECISION]
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    /// Convergent search depth [default: 40]
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Truncation cap for a bare `liouville10` slope [default: 5]
    #[arg(long, global = true)]
    pub cap: Option<u32>,
    /// Sample count for sampled checks and trajectories [default: 200]
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true, value_parser = clap::value_parser!(Format))]
    pub format: Option<Format>,
    /// `key = value` lines overriding the defaults
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Append wall-clock duration to the report (breaks byte-identical reruns)
    #[arg(long, global = true)]
    pub timing: bool,
}

impl Global {
    pub fn overrides(&self) -> Overrides {
        Overrides {
            precision: self.precision,
            depth: self.depth,
            cap: self.cap,
            samples: self.samples,
            format: self.format,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Diophantine data of a slope
    Slope {
        #[command(subcommand)]
        op: SlopeOp,
    },
    /// Solve Xg = f for a series file
    Solve {
        #[arg(long)]
        slope: String,
        #[arg(long)]
        series: PathBuf,
    },
    /// Truncated leafwise cohomology
    Cohomology {
        #[arg(long)]
        slope: String,
        /// Radius, or a comma-separated batch
        #[arg(long)]
        radius: String,
    },
    /// The Liouville counterexample family
    Counterexample {
        #[command(subcommand)]
        op: CounterexampleOp,
    },
    /// Truncated cohomology of a product foliation against the tensor prediction
    Kunneth {
        /// One slope per factor; repeat the flag
        #[arg(long, required = true)]
        slope: Vec<String>,
        #[arg(long)]
        radius: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum SlopeOp {
    /// Partial quotients
    Cf {
        #[arg(long)]
        slope: String,
    },
    /// Convergents with error enclosures
    Convergents {
        #[arg(long)]
        slope: String,
    },
    /// Witnesses |alpha - m/n| < n^-p for p = 1..=pmax
    Witness {
        #[arg(long)]
        slope: String,
        #[arg(long, default_value_t = 3)]
        pmax: u32,
    },
    /// Small-divisor gap over the lattice ball
    Gap {
        #[arg(long)]
        slope: String,
        /// Radius, or a comma-separated batch (may be empty)
        #[arg(long)]
        radius: String,
    },
    /// Log-log fit of gap decay
    Exponent {
        #[arg(long)]
        slope: String,
        /// Comma-separated increasing radii
        #[arg(long)]
        radius: String,
    },
}

/// Where the family comes from: a spec file, or built from a slope.
#[derive(Args, Debug)]
pub struct FamilySource {
    #[arg(long, conflicts_with = "slope")]
    pub spec: Option<PathBuf>,
    #[arg(long, required_unless_present = "spec")]
    pub slope: Option<String>,
    #[arg(long, default_value_t = 3)]
    pub pmax: u32,
}

#[derive(Subcommand, Debug)]
pub enum CounterexampleOp {
    /// Certify the family pairs and write the spec
    Build {
        #[arg(long)]
        slope: String,
        #[arg(long, default_value_t = 3)]
        pmax: u32,
    },
    /// Smoothness certificate over an interval of times
    Verify {
        #[command(flatten)]
        source: FamilySource,
        #[arg(long, default_value_t = 2)]
        a_max: u32,
        #[arg(long, default_value_t = 3)]
        j_max: u32,
        /// `lo,hi` as decimals or fractions
        #[arg(long, default_value = "-1,1", allow_hyphen_values = true)]
        interval: String,
    },
    /// f_t and its primitive at one time
    Solve {
        #[command(flatten)]
        source: FamilySource,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Per-pair sup of the primitive; CSV gives the sampled trajectories
    Blowup {
        #[command(flatten)]
        source: FamilySource,
        #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
        interval: String,
    },
}
