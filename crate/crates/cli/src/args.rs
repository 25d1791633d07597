use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::literal::parse_radius;

#[derive(Debug, Parser)]
#[command(
    name = "geoball",
    version,
    about = "Bounds on the first Dirichlet eigenvalue of geodesic balls in spherically symmetric manifolds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every applicable bound for one ball, plus the shooting reference value
    Bounds(BallArgs),
    /// Recompute the spherical-cap reference table (n = 2, 3; r = π/8 … 5π/8)
    Table(TableArgs),
    /// Run the inverse power refinement and print its trace
    Iterate(BallArgs),
    /// Solve the radial eigenproblem by shooting
    Oracle(BallArgs),
    /// Tabulate bounds over a range of radii
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Euclidean,
    Sphere,
    Hyperbolic,
    Tabulated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Pretty,
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct ManifoldArgs {
    /// Model space of the metric
    #[arg(long, value_enum)]
    pub space: Space,

    /// Sectional curvature; defaults to +1 on spheres and -1 in hyperbolic space
    #[arg(long, allow_hyphen_values = true)]
    pub curvature: Option<f64>,

    /// Manifold dimension n ≥ 2
    #[arg(long)]
    pub dim: usize,

    /// Test function: `cos` for cos(tπ/2r), `one` for u ≡ 1, or a CSV file with header `t,u`
    #[arg(long, default_value = "cos")]
    pub test_fn: String,

    /// Number of grid intervals (even, at least 64)
    #[arg(long, default_value_t = 2048)]
    pub grid_n: usize,

    /// Relative gap target for `iterate`, absolute bracket width for the shooting solver
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,

    /// Iteration cap for the refinement loop
    #[arg(long, default_value_t = 200)]
    pub max_iters: usize,

    #[arg(long, value_enum, default_value_t = OutputFormat::Pretty)]
    pub output: OutputFormat,

    /// Warping function samples, CSV with header `t,f` (requires `--space tabulated`)
    #[arg(long)]
    pub profile_csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BallArgs {
    #[command(flatten)]
    pub manifold: ManifoldArgs,

    /// Ball radius, as a decimal or a literal such as `pi/8` or `3pi/8`
    #[arg(long, value_parser = parse_radius)]
    pub radius: f64,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub manifold: ManifoldArgs,

    /// Smallest radius of the sweep
    #[arg(long, value_parser = parse_radius)]
    pub r_min: f64,

    /// Largest radius of the sweep
    #[arg(long, value_parser = parse_radius)]
    pub r_max: f64,

    /// Number of radii, endpoints included
    #[arg(long)]
    pub steps: usize,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 2048)]
    pub grid_n: usize,

    #[arg(long, value_enum, default_value_t = OutputFormat::Pretty)]
    pub output: OutputFormat,
}
