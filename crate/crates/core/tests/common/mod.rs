#![allow(dead_code)]

use geoball::{Ball, MetricProfile, RadialFunction, RadialGrid};
use rand::Rng;
use std::f64::consts::PI;

pub fn sphere(n: usize, r: f64) -> Ball {
    Ball::new(n, r, MetricProfile::sphere(1.0).unwrap()).unwrap()
}

pub fn flat(n: usize, r: f64) -> Ball {
    Ball::new(n, r, MetricProfile::euclidean()).unwrap()
}

pub fn hyperbolic(n: usize, r: f64) -> Ball {
    Ball::new(n, r, MetricProfile::hyperbolic(-1.0).unwrap()).unwrap()
}

/// `a0 + Σ a_j cos(jπt/r)` with `a0 > Σ|a_j|`, so strictly positive.
pub fn cosine_mixture(rng: &mut impl Rng, grid: RadialGrid) -> RadialFunction {
    let r = grid.radius();
    let coeffs: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let floor = coeffs.iter().map(|c: &f64| c.abs()).sum::<f64>() + rng.gen_range(0.05..1.0);
    RadialFunction::from_fn(grid, |t| {
        floor
            + coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| c * ((j + 1) as f64 * PI * t / r).cos())
                .sum::<f64>()
    })
}

/// A positive mixture damped by `cos(πt/2r)`, so it vanishes at `r`.
pub fn vanishing_mixture(rng: &mut impl Rng, grid: RadialGrid) -> RadialFunction {
    let base = cosine_mixture(rng, grid);
    let r = grid.radius();
    let last = grid.intervals();
    let values = grid
        .nodes()
        .enumerate()
        .map(|(k, t)| if k == last { 0.0 } else { base.at(k) * (PI * t / (2.0 * r)).cos() })
        .collect();
    RadialFunction::from_values(grid, values).unwrap()
}
