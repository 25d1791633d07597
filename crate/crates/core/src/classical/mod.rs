//! Closed-form comparison bounds for `λ₁` of geodesic balls.
//!
//! * the volume-ratio lower bound `1 / ∫_0^r V(σ)/S(σ) dσ`, valid on every
//!   spherically symmetric manifold, and its spherical special case (BCG);
//! * Cheng's upper bound `(c(n)/r)²` for nonnegative Ricci curvature, where
//!   `c(n)` is the first zero of `J_{n/2-1}` (exact on flat balls);
//! * the hyperbolic lower bound `max{n/2r, (n-1)coth(r)/2}²` and Chavel's
//!   hyperbolic upper bound.
//!
//! Hyperbolic formulas are stated for curvature -1. For curvature `κ < 0`
//! they are applied through the scaling law `λ(κ, r) = |κ| λ(-1, r√|κ|)`.

mod bessel;

use serde::Serialize;

pub use bessel::{bessel_j, bessel_zero};

use crate::error::{Error, Result};
use crate::grid::{cumulative_of, integrate, RadialFunction, RadialGrid, DEFAULT_INTERVALS};
use crate::profiles::{Ball, ProfileKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMethod {
    Bcg,
    GeneralizedVs,
    ChengUpper,
    HyperbolicLower,
    ChavelUpper,
    BartaLower,
    BartaUpper,
    #[serde(rename = "oracle")]
    OracleValue,
}

impl BoundMethod {
    pub fn label(&self) -> &'static str {
        match self {
            BoundMethod::Bcg => "bcg",
            BoundMethod::GeneralizedVs => "generalized_vs",
            BoundMethod::ChengUpper => "cheng_upper",
            BoundMethod::HyperbolicLower => "hyperbolic_lower",
            BoundMethod::ChavelUpper => "chavel_upper",
            BoundMethod::BartaLower => "barta_lower",
            BoundMethod::BartaUpper => "barta_upper",
            BoundMethod::OracleValue => "oracle",
        }
    }

    /// The side a method bounds from, before any exactness upgrade.
    pub fn natural_side(&self) -> BoundSide {
        match self {
            BoundMethod::Bcg
            | BoundMethod::GeneralizedVs
            | BoundMethod::HyperbolicLower
            | BoundMethod::BartaLower => BoundSide::Lower,
            BoundMethod::ChengUpper | BoundMethod::ChavelUpper | BoundMethod::BartaUpper => {
                BoundSide::Upper
            }
            BoundMethod::OracleValue => BoundSide::Exact,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundSide {
    Lower,
    Upper,
    Exact,
}

/// A named estimate of `λ₁`. `value` may be `+∞` for a Barta upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    pub method: BoundMethod,
    pub value: f64,
    pub side: BoundSide,
}

impl BoundReport {
    pub fn new(method: BoundMethod, value: f64) -> Self {
        Self { method, value, side: method.natural_side() }
    }

    pub fn exact(method: BoundMethod, value: f64) -> Self {
        Self { method, value, side: BoundSide::Exact }
    }

    /// Whether `lambda` is consistent with this report up to `rel_tol`.
    pub fn admits(&self, lambda: f64, rel_tol: f64) -> bool {
        let slack = rel_tol * lambda.abs();
        match self.side {
            BoundSide::Lower => self.value <= lambda + slack,
            BoundSide::Upper => self.value >= lambda - slack,
            BoundSide::Exact => (self.value - lambda).abs() <= slack,
        }
    }
}

/// `c(n)`, the first zero of `J_{n/2-1}`.
pub fn cheng_constant(dimension: usize) -> f64 {
    bessel_zero(dimension as f64 / 2.0 - 1.0)
}

/// `1 / ∫_0^r V(σ)/S(σ) dσ` on the default grid.
pub fn generalized_vs_bound(ball: &Ball) -> Result<BoundReport> {
    generalized_vs_bound_with(ball, DEFAULT_INTERVALS)
}

/// `1 / ∫_0^r V(σ)/S(σ) dσ` with `intervals` grid intervals.
///
/// `V` is accumulated from the closed-form density; near the pole the ratio
/// takes its limit `V/S ~ σ/n`.
pub fn generalized_vs_bound_with(ball: &Ball, intervals: usize) -> Result<BoundReport> {
    let grid = RadialGrid::new(ball.radius(), intervals)?;
    let eps = grid.step();
    let n = ball.dimension() as f64;
    let volume = cumulative_of(&grid, |s| ball.density(s));
    let ratio: Vec<f64> = grid
        .nodes()
        .enumerate()
        .map(|(k, t)| if t < eps { t / n } else { volume.at(k) / ball.density(t) })
        .collect();
    let integral = integrate(&RadialFunction::from_values(grid, ratio)?);
    Ok(BoundReport::new(BoundMethod::GeneralizedVs, 1.0 / integral))
}

/// Below this argument `∫ sin^m` is summed from its power series; the
/// reduction formula cancels catastrophically near zero.
const SINE_SERIES_CUTOFF: f64 = 1.0;
const SINE_SERIES_TERMS: usize = 24;

/// `∫_0^x sin^m(s) ds` for `0 ≤ x < π`.
fn sine_power_integral(m: usize, x: f64) -> f64 {
    if x < SINE_SERIES_CUTOFF {
        sine_power_series(m, x)
    } else {
        sine_power_reduction(m, x)
    }
}

fn sine_power_reduction(m: usize, x: f64) -> f64 {
    match m {
        0 => x,
        1 => 2.0 * (0.5 * x).sin().powi(2),
        _ => {
            let mf = m as f64;
            -x.sin().powi(m as i32 - 1) * x.cos() / mf
                + (mf - 1.0) / mf * sine_power_reduction(m - 2, x)
        }
    }
}

// sin^m(s) = s^m Σ_j c_j s^{2j}, integrated term by term.
fn sine_power_series(m: usize, x: f64) -> f64 {
    let mut sinc = [0.0; SINE_SERIES_TERMS];
    let mut fact = 1.0;
    for (j, c) in sinc.iter_mut().enumerate() {
        if j > 0 {
            fact *= ((2 * j) * (2 * j + 1)) as f64;
        }
        *c = if j % 2 == 0 { 1.0 } else { -1.0 } / fact;
    }
    let mut coef = [0.0; SINE_SERIES_TERMS];
    coef[0] = 1.0;
    for _ in 0..m {
        let mut next = [0.0; SINE_SERIES_TERMS];
        for (i, a) in coef.iter().enumerate() {
            for (j, b) in sinc.iter().enumerate().take(SINE_SERIES_TERMS - i) {
                next[i + j] += a * b;
            }
        }
        coef = next;
    }
    let x2 = x * x;
    let mut power = x.powi(m as i32 + 1);
    let mut sum = 0.0;
    for (j, c) in coef.iter().enumerate() {
        sum += c * power / (m + 2 * j + 1) as f64;
        power *= x2;
    }
    sum
}

/// Betz–Camera–Gzyl lower bound for spherical caps on the default grid.
pub fn bcg_bound(ball: &Ball) -> Result<BoundReport> {
    bcg_bound_with(ball, DEFAULT_INTERVALS)
}

/// Betz–Camera–Gzyl lower bound, with the inner integral of `sin^{n-1}` in
/// closed form and the outer one by Simpson.
pub fn bcg_bound_with(ball: &Ball, intervals: usize) -> Result<BoundReport> {
    let ProfileKind::Sphere { curvature } = ball.profile().kind() else {
        return Err(Error::NotApplicable {
            operation: "bcg_bound",
            profile: ball.profile().kind().name(),
            hint: "use generalized_vs_bound for non-spherical profiles",
        });
    };
    let scale = curvature.sqrt();
    let m = ball.dimension() - 1;
    let n = ball.dimension() as f64;
    let grid = RadialGrid::new(ball.radius(), intervals)?;
    let eps = grid.step();
    let inner: Vec<f64> = grid
        .nodes()
        .map(|t| {
            if t < eps {
                t / n
            } else {
                let x = scale * t;
                sine_power_integral(m, x) / (scale * x.sin().powi(m as i32))
            }
        })
        .collect();
    let integral = integrate(&RadialFunction::from_values(grid, inner)?);
    Ok(BoundReport::new(BoundMethod::Bcg, 1.0 / integral))
}

/// Cheng's comparison bound `(c(n)/r)²`: an upper bound on spheres and the
/// exact value on Euclidean balls.
pub fn cheng_upper(ball: &Ball) -> Result<BoundReport> {
    let value = (cheng_constant(ball.dimension()) / ball.radius()).powi(2);
    match ball.profile().kind() {
        ProfileKind::Euclidean => Ok(BoundReport::exact(BoundMethod::ChengUpper, value)),
        // comparison with the flat ball only needs Ricci ≥ 0
        ProfileKind::Sphere { .. } => Ok(BoundReport::new(BoundMethod::ChengUpper, value)),
        other => Err(Error::NotApplicable {
            operation: "cheng_upper",
            profile: other.name(),
            hint: "the comparison needs nonnegative Ricci curvature",
        }),
    }
}

fn hyperbolic_scale(ball: &Ball, operation: &'static str) -> Result<f64> {
    match ball.profile().kind() {
        ProfileKind::Hyperbolic { curvature } => Ok((-curvature).sqrt()),
        other => Err(Error::NotApplicable {
            operation,
            profile: other.name(),
            hint: "the bound is specific to hyperbolic space",
        }),
    }
}

/// `max{n/2r, (n-1)coth(r)/2}²` for curvature -1.
pub fn hyperbolic_lower_unit(dimension: usize, r: f64) -> f64 {
    let n = dimension as f64;
    let root = (n / (2.0 * r)).max((n - 1.0) / (2.0 * r.tanh()));
    root * root
}

/// Chavel's upper bound for curvature -1.
pub fn chavel_upper_unit(dimension: usize, r: f64) -> f64 {
    let m = dimension as f64 - 1.0;
    let excess = 1.0 / (0.5 * r).tanh() - 1.0;
    let pi = std::f64::consts::PI;
    let root = 0.5 * m * excess
        + (0.25 * m * m + 4.0 * pi * pi / (r * r) + 0.25 * m * m * excess * excess).sqrt();
    root * root
}

pub fn hyperbolic_lower(ball: &Ball) -> Result<BoundReport> {
    let s = hyperbolic_scale(ball, "hyperbolic_lower")?;
    let value = s * s * hyperbolic_lower_unit(ball.dimension(), ball.radius() * s);
    Ok(BoundReport::new(BoundMethod::HyperbolicLower, value))
}

pub fn chavel_upper(ball: &Ball) -> Result<BoundReport> {
    let s = hyperbolic_scale(ball, "chavel_upper")?;
    let value = s * s * chavel_upper_unit(ball.dimension(), ball.radius() * s);
    Ok(BoundReport::new(BoundMethod::ChavelUpper, value))
}

/// Every closed-form bound that applies to the ball's profile.
pub fn applicable_bounds(ball: &Ball, intervals: usize) -> Result<Vec<BoundReport>> {
    let mut out = vec![generalized_vs_bound_with(ball, intervals)?];
    match ball.profile().kind() {
        ProfileKind::Sphere { .. } => {
            out.push(bcg_bound_with(ball, intervals)?);
            out.push(cheng_upper(ball)?);
        }
        ProfileKind::Euclidean => out.push(cheng_upper(ball)?),
        ProfileKind::Hyperbolic { .. } => {
            out.push(hyperbolic_lower(ball)?);
            out.push(chavel_upper(ball)?);
        }
        ProfileKind::Tabulated => {}
    }
    Ok(out)
}
