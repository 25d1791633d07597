//! Reference value of `λ₁` by shooting on the radial eigenproblem
//!
//! ```text
//! (f^{n-1} u')' + λ f^{n-1} u = 0,   u'(0) = 0,   u(r) = 0.
//! ```
//!
//! The regular solution is started one grid step off the pole from its
//! series, integrated with classical RK4 on the grid, and `λ` is bisected on
//! whether `u` has reached zero anywhere in `(0, r]`. By Sturm oscillation
//! that predicate flips exactly at the first eigenvalue, so the bracket can
//! never lock onto a higher mode.

use crate::classical::{
    chavel_upper, cheng_upper, generalized_vs_bound_with, BoundReport,
};
use crate::error::{domain, Error, Result};
use crate::grid::{divergence_form, RadialFunction, RadialGrid};
use crate::profiles::{Ball, ProfileKind};

/// Bracket doublings allowed before giving up.
pub const MAX_BRACKET_DOUBLINGS: usize = 60;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub lambda1: f64,
    /// Radial eigenfunction with `u(0) = 1`, positive on `[0, r)`.
    pub eigenfunction: RadialFunction,
    /// Final bisection bracket; the lower end has no zero in `(0, r]`.
    pub bracket: (f64, f64),
    /// Number of shots fired.
    pub evaluations: usize,
    pub warnings: Vec<String>,
}

struct Shooter<'a> {
    ball: &'a Ball,
    grid: RadialGrid,
    // (n-1) f'/f at nodes and at interval midpoints
    drift_node: Vec<f64>,
    drift_mid: Vec<f64>,
}

struct Shot {
    values: Vec<f64>,
    crossed: bool,
}

impl<'a> Shooter<'a> {
    fn new(ball: &'a Ball, grid: RadialGrid) -> Self {
        let m = ball.dimension() as f64 - 1.0;
        let p = ball.profile();
        let drift = |t: f64| if t > 0.0 { m * p.f_prime(t) / p.f(t) } else { 0.0 };
        let h = grid.step();
        let drift_node = grid.nodes().map(drift).collect();
        let drift_mid = (0..grid.intervals()).map(|k| drift(grid.node(k) + 0.5 * h)).collect();
        Self { ball, grid, drift_node, drift_mid }
    }

    /// Integrates at `lambda`; with `stop_at_zero` the shot ends at the
    /// first node where `u ≤ 0`.
    fn fire(&self, lambda: f64, stop_at_zero: bool) -> Shot {
        let n = self.ball.dimension() as f64;
        let h = self.grid.step();
        let last = self.grid.intervals();
        let eps = self.grid.node(1);

        let mut values = Vec::with_capacity(last + 1);
        values.push(1.0);
        let mut u = 1.0 - lambda * eps * eps / (2.0 * n);
        let mut du = -lambda * eps / n;
        values.push(u);
        let mut crossed = u <= 0.0;

        let accel = |c: f64, u: f64, du: f64| -c * du - lambda * u;
        for k in 1..last {
            if crossed && stop_at_zero {
                break;
            }
            let (c0, cm, c1) = (self.drift_node[k], self.drift_mid[k], self.drift_node[k + 1]);
            let k1u = du;
            let k1v = accel(c0, u, du);
            let k2u = du + 0.5 * h * k1v;
            let k2v = accel(cm, u + 0.5 * h * k1u, k2u);
            let k3u = du + 0.5 * h * k2v;
            let k3v = accel(cm, u + 0.5 * h * k2u, k3u);
            let k4u = du + h * k3v;
            let k4v = accel(c1, u + h * k3u, k4u);
            u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
            du += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
            values.push(u);
            if u <= 0.0 {
                crossed = true;
            }
        }
        Shot { values, crossed }
    }
}

fn bracket_guess(ball: &Ball, intervals: usize) -> Result<(f64, f64)> {
    let vs = generalized_vs_bound_with(ball, intervals)?.value;
    let upper = match ball.profile().kind() {
        ProfileKind::Sphere { .. } | ProfileKind::Euclidean => cheng_upper(ball)?.value,
        ProfileKind::Hyperbolic { .. } => chavel_upper(ball)?.value,
        ProfileKind::Tabulated => 10.0 * vs,
    };
    Ok((0.5 * vs, 2.0 * upper.max(vs)))
}

/// First Dirichlet eigenvalue of the radial problem, bisected until the
/// bracket is narrower than `tol` (or cannot be split further).
pub fn solve_lambda1(ball: &Ball, intervals: usize, tol: f64) -> Result<OracleResult> {
    if !(tol > 0.0) {
        return Err(domain(format!("oracle tolerance must be positive, got {tol}")));
    }
    let grid = RadialGrid::new(ball.radius(), intervals)?;
    let shooter = Shooter::new(ball, grid);
    let (mut lo, mut hi) = bracket_guess(ball, intervals)?;
    let mut evaluations = 0;
    let mut warnings = Vec::new();

    let mut crossed = |lambda: f64| {
        evaluations += 1;
        shooter.fire(lambda, true).crossed
    };

    let mut doublings = 0;
    while !crossed(hi) {
        doublings += 1;
        if doublings > MAX_BRACKET_DOUBLINGS {
            return Err(Error::Oracle(format!(
                "no sign change of u(r) below λ = {hi}; the profile looks inconsistent"
            )));
        }
        hi *= 2.0;
    }
    let mut shifts = 0;
    while crossed(lo) {
        shifts += 1;
        if shifts > MAX_BRACKET_DOUBLINGS {
            return Err(Error::Oracle("could not find a λ below the first eigenvalue".into()));
        }
        lo *= 0.5;
    }
    if shifts > 0 {
        warnings.push(format!(
            "lower bracket end shifted down {shifts} time(s): the starting lower bound exceeded λ₁"
        ));
    }

    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if crossed(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    let shot = shooter.fire(lo, false);
    evaluations += 1;
    let eigenfunction = RadialFunction::from_values(grid, shot.values)?;
    Ok(OracleResult {
        lambda1: 0.5 * (lo + hi),
        eigenfunction,
        bracket: (lo, hi),
        evaluations,
        warnings,
    })
}

/// Max-norm over interior nodes of `(f^{n-1} u')' + λ f^{n-1} u`.
pub fn eigen_residual(ball: &Ball, u: &RadialFunction, lambda: f64) -> f64 {
    let grid = u.grid();
    divergence_form(u, |s| ball.density(s))
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let k = i + 1;
            (d + lambda * ball.density(grid.node(k)) * u.at(k)).abs()
        })
        .fold(0.0, f64::max)
}

/// A-posteriori defect of an oracle eigenpair.
pub fn residual(ball: &Ball, result: &OracleResult) -> f64 {
    eigen_residual(ball, &result.eigenfunction, result.lambda1)
}

/// The oracle value wrapped as an exact report.
pub fn oracle_report(result: &OracleResult) -> BoundReport {
    BoundReport::exact(crate::classical::BoundMethod::OracleValue, result.lambda1)
}
