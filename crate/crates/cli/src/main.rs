//! `crnp`: structural classification, invariant polygons and persistence checks for
//! reaction networks.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "crnp",
    version,
    about = "Persistence and permanence tools for reaction networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Complexes, linkage classes, weak reversibility, rank and deficiency.
    Analyze(Common),
    /// Endotactic and lower-endotactic classification with violating reactions.
    SweepTest(Common),
    /// Invariant polygon family: vertices, condition audits and sub-tangentiality.
    Polygon(PolygonArgs),
    /// Integrate the kinetics under a rate schedule.
    Simulate(SimulateArgs),
    /// Check a persistence-type claim on a seeded ensemble.
    Verify(VerifyArgs),
    /// Build K for a weakly reversible 3-species network and check convergence.
    Gac3(Gac3Args),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Common {
    /// Network file (`.crn` chemical, `.gcrn` generalized) or the name of a bundled example
    pub network: String,
    /// Rate bound: every rate constant stays in (eta, 1/eta)
    #[arg(long, default_value_t = 0.5)]
    pub eta: f64,
    /// Base seed for schedules and random starts
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Integration horizon (default depends on the subcommand)
    #[arg(long)]
    pub horizon: Option<f64>,
    /// Relative integrator tolerance
    #[arg(long, default_value_t = 1e-9)]
    pub rel_tol: f64,
    /// Absolute integrator tolerance
    #[arg(long, default_value_t = 1e-12)]
    pub abs_tol: f64,
    /// Number of trajectories (default depends on the subcommand)
    #[arg(long)]
    pub ensemble: Option<usize>,
    /// Rate schedule for kappa(t)
    #[arg(long, value_enum, default_value_t = Schedule::Piecewise)]
    pub schedule: Schedule,
    /// Write `<subcommand>.<ext>` and its manifest here instead of printing
    #[arg(long)]
    #[serde(skip)]
    pub out_dir: Option<PathBuf>,
    /// Output encoding
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct PolygonArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    /// Point the family must cover, as `x,y`
    #[arg(long, value_delimiter = ',', default_value = "1,1")]
    pub c0: Vec<f64>,
    /// Level to draw; defaults to the limiting level alpha0
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Boundary samples for the sub-tangentiality audit
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Use quadrant directions only (lower-endotactic networks)
    #[arg(long)]
    pub lower: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SimulateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    /// Initial state, comma separated; defaults to all ones
    #[arg(long, value_delimiter = ',')]
    pub c0: Option<Vec<f64>>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    /// Claim to check
    #[arg(long, value_enum)]
    pub claim: ClaimArg,
    /// Explicit first start, comma separated; the rest of the ensemble is drawn from the seed
    #[arg(long, value_delimiter = ',')]
    pub c0: Option<Vec<f64>>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Gac3Args {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    /// Rate constants, one per reaction; defaults to the network's nominal rates
    #[arg(long, value_delimiter = ',')]
    pub kappa: Option<Vec<f64>>,
    /// Extra start, comma separated
    #[arg(long, value_delimiter = ',')]
    pub c0: Option<Vec<f64>>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Schedule {
    Constant,
    Piecewise,
    Sin,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimArg {
    Persistence,
    Permanence,
    Containment,
    LowerEndotacticPersistence,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
