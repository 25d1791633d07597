//! Warping functions of spherically symmetric metrics `dt² + f(t)² dθ²` and
//! the geodesic balls built on them.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::grid::gauss_legendre;
use crate::special::unit_sphere_area;
use crate::spline::NaturalSpline;

/// Minimum number of samples accepted for a tabulated warping function.
pub const MIN_TABULATED_SAMPLES: usize = 8;

/// Allowed deviation of the reconstructed f'(0) from 1.
pub const TABULATED_SLOPE_TOLERANCE: f64 = 1e-3;

/// Which family a profile belongs to, with its curvature where defined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ProfileKind {
    Euclidean,
    Sphere { curvature: f64 },
    Hyperbolic { curvature: f64 },
    Tabulated,
}

impl ProfileKind {
    pub fn name(&self) -> &'static str {
        match self {
            ProfileKind::Euclidean => "euclidean",
            ProfileKind::Sphere { .. } => "sphere",
            ProfileKind::Hyperbolic { .. } => "hyperbolic",
            ProfileKind::Tabulated => "tabulated",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Warp {
    Euclidean,
    // `scale` is √|κ|
    Sphere { curvature: f64, scale: f64 },
    Hyperbolic { curvature: f64, scale: f64 },
    Tabulated(NaturalSpline),
}

/// The warping function `f` of a spherically symmetric metric.
///
/// Every profile satisfies `f(0) = 0`, `f'(0) = 1` and `f > 0` on
/// `(0, max_radius]`. Built-in kinds evaluate closed forms; tabulated
/// profiles interpolate user samples with a natural cubic spline.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricProfile {
    warp: Warp,
}

impl MetricProfile {
    pub fn euclidean() -> Self {
        Self { warp: Warp::Euclidean }
    }

    /// Round sphere of constant curvature `curvature > 0`.
    pub fn sphere(curvature: f64) -> Result<Self> {
        if !(curvature.is_finite() && curvature > 0.0) {
            return Err(domain(format!("sphere curvature must be positive, got {curvature}")));
        }
        Ok(Self {
            warp: Warp::Sphere { curvature, scale: curvature.sqrt() },
        })
    }

    /// Hyperbolic space of constant curvature `curvature < 0`.
    pub fn hyperbolic(curvature: f64) -> Result<Self> {
        if !(curvature.is_finite() && curvature < 0.0) {
            return Err(domain(format!(
                "hyperbolic curvature must be negative, got {curvature}"
            )));
        }
        Ok(Self {
            warp: Warp::Hyperbolic { curvature, scale: (-curvature).sqrt() },
        })
    }

    /// Builds a profile from `(t, f(t))` samples.
    ///
    /// The first sample must be `(0, 0)`, abscissae strictly increasing, all
    /// later values positive, and the spline slope at the origin within
    /// [`TABULATED_SLOPE_TOLERANCE`] of one.
    pub fn tabulated(samples: &[(f64, f64)]) -> Result<Self> {
        if samples.len() < MIN_TABULATED_SAMPLES {
            return Err(domain(format!(
                "tabulated profile needs at least {MIN_TABULATED_SAMPLES} samples, got {}",
                samples.len()
            )));
        }
        let (t0, f0) = samples[0];
        if t0 != 0.0 {
            return Err(Error::InvalidSample {
                index: 0,
                t: t0,
                reason: "first sample must be at t = 0".into(),
            });
        }
        if f0.abs() > 1e-12 {
            return Err(Error::InvalidSample {
                index: 0,
                t: t0,
                reason: format!("f(0) must be 0, got {f0}"),
            });
        }
        for (i, &(t, f)) in samples.iter().enumerate().skip(1) {
            if !(t > samples[i - 1].0) {
                return Err(Error::InvalidSample {
                    index: i,
                    t,
                    reason: "t must be strictly increasing".into(),
                });
            }
            if !(f > 0.0) {
                return Err(Error::InvalidSample {
                    index: i,
                    t,
                    reason: format!("f must be positive away from the origin, got {f}"),
                });
            }
        }

        let xs = samples.iter().map(|s| s.0).collect();
        let mut ys: Vec<f64> = samples.iter().map(|s| s.1).collect();
        ys[0] = 0.0;
        let spline = NaturalSpline::new(xs, ys)?;
        let slope = spline.derivative(0.0);
        if (slope - 1.0).abs() > TABULATED_SLOPE_TOLERANCE {
            return Err(Error::InvalidSample {
                index: 0,
                t: 0.0,
                reason: format!("reconstructed f'(0) = {slope} is not 1"),
            });
        }
        Ok(Self { warp: Warp::Tabulated(spline) })
    }

    pub fn kind(&self) -> ProfileKind {
        match &self.warp {
            Warp::Euclidean => ProfileKind::Euclidean,
            Warp::Sphere { curvature, .. } => ProfileKind::Sphere { curvature: *curvature },
            Warp::Hyperbolic { curvature, .. } => {
                ProfileKind::Hyperbolic { curvature: *curvature }
            }
            Warp::Tabulated(_) => ProfileKind::Tabulated,
        }
    }

    /// Sectional curvature for the space forms, `None` for tabulated profiles.
    pub fn curvature(&self) -> Option<f64> {
        match &self.warp {
            Warp::Euclidean => Some(0.0),
            Warp::Sphere { curvature, .. } | Warp::Hyperbolic { curvature, .. } => {
                Some(*curvature)
            }
            Warp::Tabulated(_) => None,
        }
    }

    pub fn f(&self, t: f64) -> f64 {
        match &self.warp {
            Warp::Euclidean => t,
            Warp::Sphere { scale, .. } => (scale * t).sin() / scale,
            Warp::Hyperbolic { scale, .. } => (scale * t).sinh() / scale,
            Warp::Tabulated(s) => s.eval(t),
        }
    }

    pub fn f_prime(&self, t: f64) -> f64 {
        match &self.warp {
            Warp::Euclidean => 1.0,
            Warp::Sphere { scale, .. } => (scale * t).cos(),
            Warp::Hyperbolic { scale, .. } => (scale * t).cosh(),
            Warp::Tabulated(s) => s.derivative(t),
        }
    }

    /// Supremum of admissible radii; `None` when unbounded.
    ///
    /// For spheres this is the antipodal distance `π/√κ`, which is itself
    /// excluded because `f` vanishes there.
    pub fn max_radius(&self) -> Option<f64> {
        match &self.warp {
            Warp::Euclidean | Warp::Hyperbolic { .. } => None,
            Warp::Sphere { scale, .. } => Some(PI / scale),
            Warp::Tabulated(s) => s.knots().last().copied(),
        }
    }

    /// Whether `f > 0` on the whole of `(0, r]`.
    pub fn admits_radius(&self, r: f64) -> bool {
        if !(r.is_finite() && r > 0.0) {
            return false;
        }
        match &self.warp {
            Warp::Euclidean | Warp::Hyperbolic { .. } => true,
            Warp::Sphere { scale, .. } => r < PI / scale,
            Warp::Tabulated(s) => r <= *s.knots().last().unwrap(),
        }
    }
}

/// A geodesic ball of radius `r` about the pole of an `n`-dimensional
/// spherically symmetric manifold.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    dimension: usize,
    radius: f64,
    profile: MetricProfile,
}

impl Ball {
    pub fn new(dimension: usize, radius: f64, profile: MetricProfile) -> Result<Self> {
        if dimension < 2 {
            return Err(domain(format!("dimension must be at least 2, got {dimension}")));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(domain(format!("radius must be positive and finite, got {radius}")));
        }
        if !profile.admits_radius(radius) {
            let limit = profile.max_radius().unwrap_or(f64::INFINITY);
            return Err(domain(format!(
                "radius {radius} exceeds the {} profile domain (limit {limit})",
                profile.kind().name()
            )));
        }
        Ok(Self { dimension, radius, profile })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn profile(&self) -> &MetricProfile {
        &self.profile
    }

    /// `f(t)^{n-1}`, the radial density of the volume form.
    pub fn density(&self, t: f64) -> f64 {
        self.profile.f(t).powi(self.dimension as i32 - 1)
    }

    /// Volume of the concentric ball of radius `t ≤ r`.
    pub fn volume(&self, t: f64) -> Result<f64> {
        if !(0.0..=self.radius).contains(&t) {
            return Err(domain(format!("volume radius {t} outside [0, {}]", self.radius)));
        }
        if t == 0.0 {
            return Ok(0.0);
        }
        let integral = gauss_legendre(|s| self.density(s), 0.0, t, 256);
        Ok(unit_sphere_area(self.dimension) * integral)
    }

    /// Area of the concentric sphere of radius `t`, `0 < t ≤ r`.
    pub fn boundary_area(&self, t: f64) -> Result<f64> {
        if !(t > 0.0 && t <= self.radius) {
            return Err(domain(format!(
                "boundary area radius {t} outside (0, {}]",
                self.radius
            )));
        }
        Ok(unit_sphere_area(self.dimension) * self.density(t))
    }
}
