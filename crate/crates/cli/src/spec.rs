//! Command-line specification of a run. Every field that affects the result
//! is part of the spec and echoed in the report.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dgeom::lattice::Family;
use dgeom::percolation::Orientation;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Parser)]
#[command(name = "dgeom", version, about = "Self-avoiding walk, percolation and random-cluster experiments")]
pub struct Cli {
    /// Master seed of every random stream.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// JSON by default; CSV for sweeps.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Threads for replica-parallel runs; never changes the result.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    /// Cap on enumeration steps or Monte Carlo edge updates.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// The reproducible part of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub command: Command,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub budget: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Self-avoiding walks.
    #[command(subcommand)]
    Saw(SawCmd),
    /// Bond percolation.
    #[command(subcommand)]
    Perc(PercCmd),
    /// Random-cluster model.
    #[command(subcommand)]
    Rc(RcCmd),
    /// Runs a command over a grid of one parameter given as start:stop:step.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SweepArgs {
    /// The command line to sweep, e.g. `perc crossing --p 0.4:0.6:0.02`.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true, required = true)]
    pub args: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SawCmd {
    /// Exact walk counts from the origin.
    Count {
        #[arg(long, default_value = "hex")]
        family: Family,
        #[arg(long)]
        nmax: usize,
        /// Counts are exact; the seed is left out of the report.
        #[arg(long)]
        #[serde(default)]
        seedless: bool,
    },
    /// Parafermionic observable on the region with parameters h, v.
    Observable {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        v: usize,
        #[arg(long, default_value = "5/8")]
        sigma: String,
        /// Defaults to 1/sqrt(2 + sqrt 2).
        #[arg(long)]
        x: Option<String>,
    },
    /// Bridge decomposition of a hexagonal walk given by its turns.
    Bridge {
        /// First step up from the origin, then one L or R per later step.
        #[arg(long)]
        turns: String,
    },
    /// Connective constant of the 3-12-12 lattice from the hexagonal one.
    Fisher {
        /// Defaults to sqrt(2 + sqrt 2).
        #[arg(long)]
        kappa: Option<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PercCmd {
    /// Crossing probability of a rectangle.
    Crossing {
        #[arg(long, default_value = "square")]
        family: Family,
        /// One probability, or one per edge class separated by commas.
        #[arg(long)]
        p: String,
        /// Window size WxH.
        #[arg(long)]
        rect: String,
        #[arg(long, default_value = "h")]
        orientation: Orientation,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Primal/dual exclusive-or check on [0, n+1] x [0, n].
    Duality {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1/2")]
        p: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Exact star-triangle laws and coupling for one edge triple.
    StarTriangle {
        #[arg(long)]
        p0: String,
        #[arg(long)]
        p1: String,
        /// Defaults to the value on the critical surface.
        #[arg(long)]
        p2: Option<String>,
    },
    /// Transport of crossings through the interface of a mixed cylinder.
    Universality {
        #[arg(long, default_value_t = 24)]
        width: usize,
        #[arg(long, default_value_t = 16)]
        square_layers: usize,
        #[arg(long, default_value_t = 8)]
        triangular_layers: usize,
        #[arg(long, default_value_t = 8)]
        steps: usize,
        /// x0,y0,x1,y1 in the square part.
        #[arg(long, default_value = "4,8,36,16")]
        rect: String,
        #[arg(long, default_value = "0.6")]
        p0: String,
        #[arg(long, default_value = "0.25")]
        p1: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Arm event probability in the square annulus.
    Arms {
        /// Colours outward-first, 1 for primal and 0 for dual, e.g. 10.
        #[arg(long)]
        colours: String,
        #[arg(long)]
        inner: usize,
        #[arg(long)]
        outer: usize,
        #[arg(long, default_value = "1/2")]
        p: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Pivotal-edge estimate of the derivative of a crossing probability.
    Russo {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1/2")]
        p: String,
        #[arg(long, default_value = "0.01")]
        delta: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Distribution of the radius of the central cluster.
    Radius {
        #[arg(long, default_value = "square")]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bc {
    Free,
    Wired,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RcCmd {
    /// Exact law by enumeration, as rational strings.
    Exact {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long, value_enum, default_value_t = Bc::Free)]
        bc: Bc,
    },
    /// Self-dual point and dual parameter; with a graph, the exact duality check.
    Dual {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        q: String,
    },
    /// Heat-bath run with edge marginals and configuration frequencies.
    Sample {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long, value_enum, default_value_t = Bc::Free)]
        bc: Bc,
        #[arg(long, default_value_t = 10_000)]
        sweeps: usize,
        #[arg(long, default_value_t = 200)]
        burn_in: usize,
    },
    /// Horizontal crossing of [0, 3n/2) x [0, n) on a torus.
    Crossing {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "2")]
        q: String,
        /// Torus side; defaults to 2n.
        #[arg(long)]
        m: Option<usize>,
        /// Defaults to the self-dual point.
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        #[serde(default)]
        rotated: bool,
        #[command(flatten)]
        chains: ChainArgs,
    },
    /// Circuit event in the annulus 3^k < |x| <= 3^(k+1) under wired conditions.
    Annulus {
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long)]
        p: String,
        #[arg(long, default_value = "2")]
        q: String,
        #[command(flatten)]
        chains: ChainArgs,
    },
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ChainArgs {
    #[arg(long, default_value_t = 8)]
    pub chains: usize,
    /// Recorded sweeps per chain.
    #[arg(long, default_value_t = 1000)]
    pub sweeps: usize,
    #[arg(long, default_value_t = 200)]
    pub burn_in: usize,
    /// Pick edges uniformly at random instead of in id order.
    #[arg(long)]
    #[serde(default)]
    pub random_scan: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs_round_trip() {
        let lines = [
            "dgeom saw count --family hex --nmax 12 --seedless",
            "dgeom --seed 7 perc crossing --p 0.5 --rect 17x16 --samples 100",
            "dgeom perc universality --steps 4",
            "dgeom rc crossing --n 8 --q 2 --random-scan --chains 2",
            "dgeom rc exact --graph g.json --p 1/2 --q 2 --bc wired",
            "dgeom sweep perc crossing --p 0.4:0.6:0.1 --rect 5x4",
        ];
        for line in lines {
            let cli = Cli::try_parse_from(line.split_whitespace()).unwrap();
            let spec = crate::spec_of(&cli);
            let text = serde_json::to_string(&spec).unwrap();
            let back: ExperimentSpec = serde_json::from_str(&text).unwrap();
            assert_eq!(back, spec, "{line}");
        }
    }

    #[test]
    fn execution_settings_stay_out_of_the_spec() {
        let a = Cli::try_parse_from("dgeom --workers 1 perc duality --n 4".split_whitespace()).unwrap();
        let b = Cli::try_parse_from("dgeom --workers 4 --format csv perc duality --n 4".split_whitespace()).unwrap();
        assert_eq!(crate::spec_of(&a), crate::spec_of(&b));
    }
}
