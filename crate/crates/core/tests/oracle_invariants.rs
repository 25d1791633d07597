mod common;

use approx::assert_relative_eq;
use common::*;
use geoball::classical::{
    applicable_bounds, bcg_bound_with, bessel_zero, chavel_upper, generalized_vs_bound_with,
    hyperbolic_lower, BoundSide,
};
use geoball::oracle::residual;
use geoball::{barta_bounds, solve_lambda1, Ball, MetricProfile, RadialFunction, RadialGrid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

#[test]
fn hemispheres_in_several_dimensions() {
    for n in 2..=5 {
        let o = solve_lambda1(&sphere(n, PI / 2.0), 2048, 1e-12).unwrap();
        assert_relative_eq!(o.lambda1, n as f64, max_relative = 1e-9);
    }
}

#[test]
fn euclidean_balls_match_bessel_zeros() {
    for n in 2..=5 {
        let j = bessel_zero(n as f64 / 2.0 - 1.0);
        for r in [0.3, 1.0, 4.0] {
            let o = solve_lambda1(&flat(n, r), 2048, 1e-12 * (j / r).powi(2)).unwrap();
            assert_relative_eq!(o.lambda1, (j / r).powi(2), max_relative = 1e-9);
        }
    }
}

#[test]
fn eigenvalue_decreases_with_radius() {
    for make in [sphere as fn(usize, f64) -> Ball, flat, hyperbolic] {
        for n in [2, 4] {
            let mut previous = f64::INFINITY;
            for r in [0.3, 0.6, 1.0, 1.7, 2.6] {
                let lambda = solve_lambda1(&make(n, r), 1024, 1e-11).unwrap().lambda1;
                assert!(lambda < previous, "n={n} r={r}: {lambda} !< {previous}");
                previous = lambda;
            }
        }
    }
}

#[test]
fn oracle_error_shrinks_under_refinement() {
    for ball in [sphere(3, 2.0), hyperbolic(2, 1.5), flat(4, 1.0)] {
        let values: Vec<f64> = [64, 128, 256, 512]
            .iter()
            .map(|&n| solve_lambda1(&ball, n, 1e-14).unwrap().lambda1)
            .collect();
        let d1 = (values[0] - values[1]).abs();
        let d2 = (values[1] - values[2]).abs();
        let d3 = (values[2] - values[3]).abs();
        assert!(d1 >= 4.0 * d2 && d2 >= 4.0 * d3, "{ball:?}: {d1} {d2} {d3}");
    }
}

#[test]
fn eigenpair_residual_is_small() {
    for ball in [sphere(2, 1.0), hyperbolic(3, 2.0), flat(2, 0.5)] {
        let o = solve_lambda1(&ball, 2048, 1e-12).unwrap();
        let scale = o.lambda1 * (0..=2048).map(|k| ball.density(o.eigenfunction.grid().node(k))).fold(0.0, f64::max);
        assert!(residual(&ball, &o) < 1e-5 * scale);
    }
}

#[test]
fn every_bound_brackets_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..30 {
        let n = rng.gen_range(2..=5);
        let ball = match rng.gen_range(0..3) {
            0 => sphere(n, rng.gen_range(0.1..3.0)),
            1 => flat(n, rng.gen_range(0.1..5.0)),
            _ => {
                let k: f64 = -rng.gen_range(0.1..4.0);
                Ball::new(n, rng.gen_range(0.1..6.0), MetricProfile::hyperbolic(k).unwrap()).unwrap()
            }
        };
        let lambda = solve_lambda1(&ball, 2048, 1e-12).unwrap().lambda1;
        for report in applicable_bounds(&ball, 2048).unwrap() {
            assert!(report.admits(lambda, 1e-9), "{ball:?}: {report:?} vs {lambda}");
        }
        let grid = RadialGrid::new(ball.radius(), 2048).unwrap();
        let b = barta_bounds(&ball, &RadialFunction::from_fn(grid, |_| 1.0)).unwrap();
        assert!(b.lower <= lambda * (1.0 + 1e-9));
        assert!(b.upper.is_infinite());
    }
}

#[test]
fn cheng_is_exact_on_flat_balls() {
    let reports = applicable_bounds(&flat(3, 2.0), 512).unwrap();
    let cheng = reports.iter().find(|r| r.side == BoundSide::Exact).unwrap();
    assert_relative_eq!(cheng.value, (PI / 2.0).powi(2), max_relative = 1e-12);
}

#[test]
fn bcg_is_a_barta_bound_with_a_pole_minimum() {
    // BCG coincides with the Barta lower bound of the comparison test
    // function, whose quotient is smallest at the centre.
    for (n, r) in [(2, 0.5), (3, 1.2), (4, 2.5)] {
        let ball = sphere(n, r);
        let bcg = bcg_bound_with(&ball, 2048).unwrap().value;
        let vs = generalized_vs_bound_with(&ball, 2048).unwrap().value;
        assert_relative_eq!(bcg, vs, max_relative = 1e-9);
        let grid = RadialGrid::new(r, 2048).unwrap();
        let b = barta_bounds(&ball, &RadialFunction::from_fn(grid, |_| 1.0)).unwrap();
        assert_eq!(b.argmin_t, 0.0);
    }
}

#[test]
fn hyperbolic_bounds_rescale() {
    for n in [2, 3] {
        for r in [0.5, 2.0] {
            for k in [-0.25f64, -4.0] {
                let s = (-k).sqrt();
                let ball = Ball::new(n, r / s, MetricProfile::hyperbolic(k).unwrap()).unwrap();
                let unit = hyperbolic(n, r);
                let lo = hyperbolic_lower(&ball).unwrap().value / (s * s);
                let hi = chavel_upper(&ball).unwrap().value / (s * s);
                assert_relative_eq!(lo, hyperbolic_lower(&unit).unwrap().value, max_relative = 1e-12);
                assert_relative_eq!(hi, chavel_upper(&unit).unwrap().value, max_relative = 1e-12);
            }
        }
    }
}

#[test]
fn profiles_match_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let k: f64 = rng.gen_range(0.1..9.0);
        let sph = MetricProfile::sphere(k).unwrap();
        let hyp = MetricProfile::hyperbolic(-k).unwrap();
        let s = k.sqrt();
        let t = rng.gen_range(0.0..PI / s);
        assert_relative_eq!(sph.f(t), (s * t).sin() / s, max_relative = 1e-14, epsilon = 1e-300);
        assert_relative_eq!(sph.f_prime(t), (s * t).cos(), epsilon = 1e-14);
        assert_relative_eq!(hyp.f(t), (s * t).sinh() / s, max_relative = 1e-14, epsilon = 1e-300);
        assert_relative_eq!(hyp.f_prime(t), (s * t).cosh(), max_relative = 1e-14);
    }
    for p in [MetricProfile::euclidean(), MetricProfile::sphere(3.0).unwrap(), MetricProfile::hyperbolic(-2.0).unwrap()] {
        for t in [1e-3, 1e-5, 1e-8] {
            assert!((p.f(t) / t - 1.0).abs() < 10.0 * t);
        }
    }
}

#[test]
fn volume_grows_and_matches_area_integral() {
    for ball in [sphere(3, 2.5), flat(2, 1.0), hyperbolic(4, 1.5)] {
        let r = ball.radius();
        let mut previous = 0.0;
        for i in 1..=20 {
            let t = r * i as f64 / 20.0;
            let v = ball.volume(t).unwrap();
            assert!(v > previous);
            previous = v;
        }
        // dV/dt = area
        let t = 0.6 * r;
        let h = 1e-4;
        let dv = (ball.volume(t + h).unwrap() - ball.volume(t - h).unwrap()) / (2.0 * h);
        assert_relative_eq!(dv, ball.boundary_area(t).unwrap(), max_relative = 1e-6);
    }
    assert_relative_eq!(flat(2, 1.0).volume(1.0).unwrap(), PI, max_relative = 1e-12);
    assert_relative_eq!(flat(3, 1.0).volume(1.0).unwrap(), 4.0 * PI / 3.0, max_relative = 1e-12);
}
