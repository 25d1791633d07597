//! Two-sided bounds for the first Dirichlet eigenvalue of geodesic balls in
//! spherically symmetric manifolds.
//!
//! The metric `dt² + f(t)² dθ²` is described by a [`MetricProfile`]; a
//! [`Ball`] fixes the dimension and radius. [`barta`] turns any nonnegative
//! radial test function into a certified enclosure of `λ₁` and refines it,
//! [`classical`] evaluates the closed-form comparison bounds, and [`oracle`]
//! solves the radial eigenproblem by shooting as an independent check.

pub mod barta;
pub mod classical;
pub mod error;
pub mod grid;
pub mod oracle;
pub mod profiles;
pub mod special;
pub mod spline;

pub use barta::{apply_t, barta_bounds, refine, BartaBounds, BartaOperator, IterationTrace};
pub use classical::{BoundMethod, BoundReport, BoundSide};
pub use error::{Error, Result};
pub use grid::{RadialFunction, RadialGrid};
pub use oracle::{solve_lambda1, OracleResult};
pub use profiles::{Ball, MetricProfile, ProfileKind};
