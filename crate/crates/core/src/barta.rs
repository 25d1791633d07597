//! The radial inverse-Laplacian `T` and the Barta quotient bounds.
//!
//! For a nonnegative radial `u` on `[0, r]`,
//!
//! ```text
//! T(u)(t) = ∫_t^r (1 / f^{n-1}(σ)) ∫_0^σ f^{n-1}(s) u(s) ds dσ
//! ```
//!
//! solves `Δ T̃u = -ũ` with `T(u)(r) = 0`, so by Barta's inequality the
//! quotient `h(t, u) = u(t) / T(u)(t)` satisfies
//! `inf_t h ≤ λ₁(B(r)) ≤ sup_t h`, with equality exactly for the first
//! eigenfunction. Iterating `u ← T(u)` is inverse power iteration for `-Δ`
//! and drives both sides together.

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::grid::{
    cumulative_to_r, divergence_form, RadialFunction, RadialGrid, WeightedCumulative,
};
use crate::profiles::Ball;

/// Negative samples of a test function above this magnitude are rejected.
pub const NEGATIVITY_TOLERANCE: f64 = 1e-12;

/// `u(r)` at or below this fraction of `max u` counts as a boundary zero.
pub const BOUNDARY_ZERO_FRACTION: f64 = 1e-9;

/// Default relative-gap tolerance for [`refine`].
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// Default iteration cap for [`refine`].
pub const DEFAULT_MAX_ITERS: usize = 200;

/// The classical test function `cos(tπ/2r)`.
pub fn cosine_test_function(grid: &RadialGrid) -> RadialFunction {
    let r = grid.radius();
    let last = grid.intervals();
    // pinned at the boundary: cos(π/2) evaluates to 6e-17
    let values = (0..=last)
        .map(|k| match k {
            k if k == last => 0.0,
            k => (grid.node(k) * std::f64::consts::PI / (2.0 * r)).cos(),
        })
        .collect();
    RadialFunction::from_values(*grid, values).expect("finite samples")
}

/// Behaviour of the quotient at the boundary node `t = r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum BoundaryQuotient {
    /// `u(r) = 0`: the one-sided limit `u'(r) / T(u)'(r)`.
    Limit(f64),
    /// `u(r) > 0` while `T(u)(r) = 0`, so the quotient blows up.
    Unbounded,
}

/// Whether the boundary limit takes part in the inf/sup.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryMode {
    IncludeLimit,
    /// Interior nodes only when `u(r) = 0`; an unbounded boundary still
    /// forces `upper = +∞`.
    InteriorOnly,
}

/// Two-sided eigenvalue enclosure from one test function.
#[derive(Debug, Clone, PartialEq)]
pub struct BartaBounds {
    pub lower: f64,
    /// `+∞` when the test function does not vanish at `r`.
    pub upper: f64,
    pub argmin_t: f64,
    pub argmax_t: f64,
    /// `h(t_k, u)` for `k = 0 … N-1`.
    pub interior: Vec<f64>,
    pub boundary: BoundaryQuotient,
    /// `T(u)` on the grid.
    pub transform: RadialFunction,
}

impl BartaBounds {
    /// Relative enclosure width `(upper - lower) / lower`.
    pub fn gap(&self) -> f64 {
        (self.upper - self.lower) / self.lower
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

/// Output of `T` together with the inner average it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct Transformed {
    /// `T(u)`.
    pub value: RadialFunction,
    /// `(1/f^{n-1}(σ)) ∫_0^σ f^{n-1} u`, which equals `-T(u)'(σ)`.
    pub inner: RadialFunction,
}

/// `T` discretised on one grid of one ball.
#[derive(Debug, Clone)]
pub struct BartaOperator<'a> {
    ball: &'a Ball,
    grid: RadialGrid,
    density: Vec<f64>,
    rule: WeightedCumulative,
}

impl<'a> BartaOperator<'a> {
    pub fn new(ball: &'a Ball, intervals: usize) -> Result<Self> {
        let grid = RadialGrid::new(ball.radius(), intervals)?;
        let density = grid.nodes().map(|t| ball.density(t)).collect();
        let rule = WeightedCumulative::new(&grid, |s| ball.density(s));
        Ok(Self { ball, grid, density, rule })
    }

    /// Operator on the grid carried by `u`.
    pub fn for_function(ball: &'a Ball, u: &RadialFunction) -> Result<Self> {
        check_radius(ball, u.grid())?;
        Self::new(ball, u.grid().intervals())
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn ball(&self) -> &Ball {
        self.ball
    }

    fn validate(&self, u: &RadialFunction) -> Result<()> {
        if u.grid() != &self.grid {
            return Err(domain("test function is sampled on a different grid"));
        }
        if let Some((k, v)) = u
            .values()
            .iter()
            .enumerate()
            .find(|(_, v)| **v < -NEGATIVITY_TOLERANCE)
        {
            return Err(domain(format!(
                "test function is negative at t = {} (value {v})",
                self.grid.node(k)
            )));
        }
        if u.values().iter().all(|v| *v <= 0.0) {
            return Err(domain("test function is identically zero"));
        }
        Ok(())
    }

    pub fn transform(&self, u: &RadialFunction) -> Result<Transformed> {
        self.validate(u)?;
        let n = self.ball.dimension() as f64;
        let eps = self.grid.step();
        let moments = self.rule.apply(u);
        let inner: Vec<f64> = self
            .grid
            .nodes()
            .enumerate()
            .map(|(k, t)| {
                if t < eps {
                    // f(s) ~ s near the pole
                    t * u.at(0) / n
                } else {
                    moments.at(k) / self.density[k]
                }
            })
            .collect();
        let inner = RadialFunction::from_values(self.grid, inner)?;
        let value = cumulative_to_r(&inner);
        Ok(Transformed { value, inner })
    }

    pub fn apply(&self, u: &RadialFunction) -> Result<RadialFunction> {
        Ok(self.transform(u)?.value)
    }

    pub fn bounds(&self, u: &RadialFunction, mode: BoundaryMode) -> Result<BartaBounds> {
        let Transformed { value: tu, inner } = self.transform(u)?;
        let n = self.grid.intervals();
        let h = self.grid.step();

        let mut interior = Vec::with_capacity(n);
        for k in 0..n {
            let denom = tu.at(k);
            if !(denom > 0.0) {
                return Err(domain(format!(
                    "T(u) vanished inside the ball at t = {}",
                    self.grid.node(k)
                )));
            }
            interior.push(u.at(k) / denom);
        }

        let boundary = if u.last() <= BOUNDARY_ZERO_FRACTION * u.max_abs() {
            let du = (3.0 * u.at(n) - 4.0 * u.at(n - 1) + u.at(n - 2)) / (2.0 * h);
            // T(u)'(r) = -inner(r)
            BoundaryQuotient::Limit(-du / inner.last())
        } else {
            BoundaryQuotient::Unbounded
        };

        let mut lower = f64::INFINITY;
        let mut upper = f64::NEG_INFINITY;
        let mut argmin_t = 0.0;
        let mut argmax_t = 0.0;
        for (k, &q) in interior.iter().enumerate() {
            if q < lower {
                lower = q;
                argmin_t = self.grid.node(k);
            }
            if q > upper {
                upper = q;
                argmax_t = self.grid.node(k);
            }
        }
        match (boundary, mode) {
            (BoundaryQuotient::Unbounded, _) => {
                upper = f64::INFINITY;
                argmax_t = self.grid.radius();
            }
            (BoundaryQuotient::Limit(q), BoundaryMode::IncludeLimit) => {
                if q < lower {
                    lower = q;
                    argmin_t = self.grid.radius();
                }
                if q > upper {
                    upper = q;
                    argmax_t = self.grid.radius();
                }
            }
            (BoundaryQuotient::Limit(_), BoundaryMode::InteriorOnly) => {}
        }

        Ok(BartaBounds { lower, upper, argmin_t, argmax_t, interior, boundary, transform: tu })
    }

    /// Max-norm over interior nodes of `(f^{n-1} (Tu)')' + f^{n-1} u`, the
    /// discrete defect of `Δ T̃u = -ũ`.
    pub fn identity_residual(&self, u: &RadialFunction) -> Result<f64> {
        let tu = self.apply(u)?;
        let div = divergence_form(&tu, |s| self.ball.density(s));
        Ok(div
            .iter()
            .enumerate()
            .map(|(i, d)| (d + self.density[i + 1] * u.at(i + 1)).abs())
            .fold(0.0, f64::max))
    }
}

fn check_radius(ball: &Ball, grid: &RadialGrid) -> Result<()> {
    let r = ball.radius();
    if (grid.radius() - r).abs() > 1e-12 * r {
        return Err(domain(format!(
            "grid radius {} does not match ball radius {r}",
            grid.radius()
        )));
    }
    Ok(())
}

/// `T(u)` on the grid of `u`.
pub fn apply_t(ball: &Ball, u: &RadialFunction) -> Result<RadialFunction> {
    BartaOperator::for_function(ball, u)?.apply(u)
}

/// `inf h ≤ λ₁ ≤ sup h`, including the boundary limit when `u(r) = 0`.
pub fn barta_bounds(ball: &Ball, u: &RadialFunction) -> Result<BartaBounds> {
    BartaOperator::for_function(ball, u)?.bounds(u, BoundaryMode::IncludeLimit)
}

/// One row of an [`IterationTrace`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IterationStep {
    pub iteration: usize,
    pub lower: f64,
    pub upper: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace {
    pub steps: Vec<IterationStep>,
    pub converged: bool,
    /// The last iterate whose bounds were recorded.
    pub final_u: RadialFunction,
}

impl IterationTrace {
    pub fn last(&self) -> &IterationStep {
        self.steps.last().expect("trace has at least one step")
    }

    /// Midpoint of the final enclosure.
    pub fn estimate(&self) -> f64 {
        let s = self.last();
        0.5 * (s.lower + s.upper)
    }
}

/// Iterates `u ← T(u) / ‖T(u)‖_∞` until the relative gap drops below `tol`.
///
/// Step 1 reports the bounds of `u0` itself. Once `u` vanishes at `r` the
/// boundary limit is left out of the sup: the iterates converge to the
/// discrete eigenvector at the interior nodes only.
pub fn refine(
    ball: &Ball,
    u0: &RadialFunction,
    tol: f64,
    max_iters: usize,
) -> Result<IterationTrace> {
    if !(tol > 0.0) {
        return Err(domain(format!("tolerance must be positive, got {tol}")));
    }
    if max_iters == 0 {
        return Err(domain("max_iters must be at least 1"));
    }
    let op = BartaOperator::for_function(ball, u0)?;
    let mut u = u0.clone();
    let mut steps = Vec::new();
    let mut converged = false;
    for iteration in 1..=max_iters {
        let bounds = op.bounds(&u, BoundaryMode::InteriorOnly)?;
        let gap = bounds.gap();
        steps.push(IterationStep { iteration, lower: bounds.lower, upper: bounds.upper, gap });
        if gap < tol {
            converged = true;
            break;
        }
        if iteration == max_iters {
            break;
        }
        let next = bounds.transform;
        let norm = next.max_abs();
        if !(norm > 0.0) {
            return Err(Error::Domain("T(u) vanished during refinement".into()));
        }
        u = next.scaled(1.0 / norm);
    }
    Ok(IterationTrace { steps, converged, final_u: u })
}
