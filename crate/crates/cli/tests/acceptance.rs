//! Acceptance checks, one line per criterion. Exits nonzero if any fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use geoball::barta::{cosine_test_function, BartaOperator};
use geoball::classical::{
    bessel_zero, chavel_upper, generalized_vs_bound_with, hyperbolic_lower,
};
use geoball::{barta_bounds, refine, solve_lambda1, Ball, MetricProfile, RadialFunction, RadialGrid};
use geoball_cli::commands::{table_entries, TABLE_TOLERANCE};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const N: usize = 2048;

type Shape = fn(f64, f64) -> f64;
type Criterion = (&'static str, &'static str, fn() -> Check);

struct Check {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Check {
    Check { pass, detail: detail.into() }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn sphere(n: usize, r: f64) -> Ball {
    Ball::new(n, r, MetricProfile::sphere(1.0).unwrap()).unwrap()
}

fn cap_configurations() -> Vec<(usize, f64)> {
    [2, 3].iter().flat_map(|&n| (1..=5).map(move |k| (n, k as f64 * PI / 8.0))).collect()
}

fn table_reproduction() -> Check {
    let start = Instant::now();
    let entries = match table_entries(N) {
        Ok(e) => e,
        Err(e) => return check(false, format!("table failed: {e}")),
    };
    let elapsed = start.elapsed().as_secs_f64();
    let ok = entries.iter().filter(|e| e.deviation <= TABLE_TOLERANCE).count();
    let worst = entries.iter().map(|e| e.deviation).fold(0.0, f64::max);
    check(
        entries.len() == 20 && ok == 20 && elapsed < 5.0,
        format!("{ok}/{} entries within ±{TABLE_TOLERANCE} (max deviation {worst:.4}), {elapsed:.3} s at N={N}", entries.len()),
    )
}

fn equality_cases() -> Check {
    let r = PI / 2.0;
    let grid = RadialGrid::new(r, N).unwrap();
    let u = cosine_test_function(&grid);
    let mut pass = true;
    let mut notes = Vec::new();
    for n in [2usize, 3] {
        let ball = sphere(n, r);
        let b = barta_bounds(&ball, &u).unwrap();
        let spread = (b.upper - b.lower) / b.lower;
        let off = rel(b.lower, n as f64).max(rel(b.upper, n as f64));
        let trace = refine(&ball, &u, 1e-8, 200).unwrap();
        let one_step = trace.converged && trace.steps.len() == 1;
        pass &= spread <= 1e-6 && off <= 1e-6 && one_step;
        notes.push(format!("n={n}: spread {spread:.1e}, |h-n|/n ≤ {off:.1e}, refine steps {}", trace.steps.len()));
    }
    check(pass, notes.join("; "))
}

fn euclidean_closed_form() -> Check {
    let mut worst: f64 = 0.0;
    for n in [2usize, 3] {
        let j = bessel_zero(n as f64 / 2.0 - 1.0);
        for r in [0.5, 1.0, 2.0] {
            let exact = (j / r).powi(2);
            let ball = Ball::new(n, r, MetricProfile::euclidean()).unwrap();
            let lambda = solve_lambda1(&ball, N, 1e-13 * exact).unwrap().lambda1;
            worst = worst.max(rel(lambda, exact));
        }
    }
    let zero_err = rel(bessel_zero(0.5), PI);
    check(
        worst <= 1e-6 && zero_err <= 1e-12,
        format!("max relative error {worst:.1e} over 6 balls; bessel_zero(1/2) vs π {zero_err:.1e}"),
    )
}

fn random_positive(rng: &mut ChaCha8Rng, grid: RadialGrid, vanish: bool) -> RadialFunction {
    let r = grid.radius();
    let coeffs: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let floor = coeffs.iter().map(|c| c.abs()).sum::<f64>() + rng.gen_range(0.05..1.0);
    let last = grid.intervals();
    let values = grid
        .nodes()
        .enumerate()
        .map(|(k, t)| {
            let base = floor
                + coeffs.iter().enumerate().map(|(j, c)| c * ((j + 1) as f64 * PI * t / r).cos()).sum::<f64>();
            match (vanish, k == last) {
                (true, true) => 0.0,
                (true, false) => base * (PI * t / (2.0 * r)).cos(),
                (false, _) => base,
            }
        })
        .collect();
    RadialFunction::from_values(grid, values).unwrap()
}

fn sandwich() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let balls = [
        sphere(2, 0.6),
        sphere(3, 2.2),
        Ball::new(4, 1.3, MetricProfile::sphere(2.0).unwrap()).unwrap(),
        Ball::new(2, 1.0, MetricProfile::euclidean()).unwrap(),
        Ball::new(5, 3.0, MetricProfile::euclidean()).unwrap(),
        Ball::new(2, 2.0, MetricProfile::hyperbolic(-1.0).unwrap()).unwrap(),
        Ball::new(3, 5.0, MetricProfile::hyperbolic(-0.5).unwrap()).unwrap(),
    ];
    let mut total = 0;
    let mut violations = 0;
    let mut margin = f64::INFINITY;
    for ball in &balls {
        let grid = RadialGrid::new(ball.radius(), N).unwrap();
        let lambda = solve_lambda1(ball, N, 1e-12).unwrap().lambda1;
        for i in 0..6 {
            let u = random_positive(&mut rng, grid, i % 2 == 1);
            let b = barta_bounds(ball, &u).unwrap();
            total += 1;
            if !(b.lower <= lambda && lambda <= b.upper) {
                violations += 1;
            }
            margin = margin.min((lambda - b.lower) / lambda);
            if b.upper.is_finite() {
                margin = margin.min((b.upper - lambda) / lambda);
            }
        }
    }
    check(
        violations == 0 && total >= 20,
        format!("{total} test functions on {} balls, {violations} violations, smallest relative margin {margin:.2e}", balls.len()),
    )
}

fn operator_identity() -> Check {
    let hyperbolic = MetricProfile::hyperbolic(-1.0).unwrap();
    let balls = [
        ("sphere", 2, 1.2, MetricProfile::sphere(1.0).unwrap()),
        ("sphere", 3, 2.5, MetricProfile::sphere(1.0).unwrap()),
        ("euclidean", 2, 1.0, MetricProfile::euclidean()),
        ("euclidean", 3, 2.0, MetricProfile::euclidean()),
        ("hyperbolic", 2, 2.0, hyperbolic.clone()),
        ("hyperbolic", 3, 1.0, hyperbolic),
    ];
    let tests: [(&str, Shape); 5] = [
        ("cos(πt/2r)", |t, r| (PI * t / (2.0 * r)).cos()),
        ("exp(-t)", |t, _| (-t).exp()),
        ("2+cos(3t/r)+sin t", |t, r| 2.0 + (3.0 * t / r).cos() + t.sin()),
        ("1/(1+t²)", |t, _| 1.0 / (1.0 + t * t)),
        ("cosh(t/2)", |t, _| (0.5 * t).cosh()),
    ];
    let mut worst = f64::INFINITY;
    let mut worst_case = String::new();
    for (name, n, r, profile) in &balls {
        let ball = Ball::new(*n, *r, profile.clone()).unwrap();
        for (label, u) in &tests {
            let residuals: Vec<f64> = [256, 512, 1024, 2048]
                .iter()
                .map(|&intervals| {
                    let op = BartaOperator::new(&ball, intervals).unwrap();
                    let f = RadialFunction::from_fn(*op.grid(), |t| u(t, *r));
                    op.identity_residual(&f).unwrap()
                })
                .collect();
            for w in residuals.windows(2) {
                let order = (w[0] / w[1]).log2();
                if order < worst {
                    worst = order;
                    worst_case = format!("{name} n={n} r={r}, u={label}");
                }
            }
        }
    }
    check(
        worst >= 1.9,
        format!("{} balls × 5 functions, minimum observed order {worst:.3} ({worst_case})", balls.len()),
    )
}

fn bcg_coincidence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let n = rng.gen_range(2..=6);
        let r = rng.gen_range(0.05..3.0);
        let ball = sphere(n, r);
        let grid = RadialGrid::new(r, N).unwrap();
        let lower = barta_bounds(&ball, &RadialFunction::from_fn(grid, |_| 1.0)).unwrap().lower;
        let vs = generalized_vs_bound_with(&ball, N).unwrap().value;
        worst = worst.max(rel(lower, vs));
    }
    check(worst <= 1e-9, format!("10 random sphere balls, max relative difference {worst:.1e}"))
}

fn refinement() -> Check {
    let mut pass = true;
    let mut max_steps = 0;
    let mut worst: f64 = 0.0;
    for (n, r) in cap_configurations() {
        let ball = sphere(n, r);
        let grid = RadialGrid::new(r, N).unwrap();
        let trace = refine(&ball, &RadialFunction::from_fn(grid, |_| 1.0), 1e-8, 200).unwrap();
        let lambda = solve_lambda1(&ball, N, 1e-12).unwrap().lambda1;
        let err = rel(trace.estimate(), lambda);
        pass &= trace.converged && trace.last().gap < 1e-8 && err <= 1e-5;
        max_steps = max_steps.max(trace.steps.len());
        worst = worst.max(err);
    }
    check(pass, format!("10 cap configurations, at most {max_steps} iterations, max relative error vs oracle {worst:.1e}"))
}

fn hyperbolic_bounds() -> Check {
    let mut pass = true;
    let mut scaling: f64 = 0.0;
    let mut tightest = f64::INFINITY;
    for n in [2usize, 3] {
        for r in [0.5, 1.0, 3.0, 10.0] {
            let ball = Ball::new(n, r, MetricProfile::hyperbolic(-1.0).unwrap()).unwrap();
            let lo = hyperbolic_lower(&ball).unwrap().value;
            let hi = chavel_upper(&ball).unwrap().value;
            let lambda = solve_lambda1(&ball, N, 1e-13).unwrap().lambda1;
            pass &= lo <= lambda && lambda <= hi;
            tightest = tightest.min((lambda - lo) / lambda).min((hi - lambda) / lambda);
            for k in [-0.25, -4.0] {
                let s = f64::sqrt(-k);
                let scaled = Ball::new(n, r / s, MetricProfile::hyperbolic(k).unwrap()).unwrap();
                let lo_k = hyperbolic_lower(&scaled).unwrap().value / (s * s);
                let hi_k = chavel_upper(&scaled).unwrap().value / (s * s);
                scaling = scaling.max(rel(lo_k, lo)).max(rel(hi_k, hi));
            }
        }
    }
    pass &= scaling <= 1e-12;
    check(
        pass,
        format!("8 balls bracketed (smallest relative margin {tightest:.2e}); rescaling error {scaling:.1e} for κ ∈ {{-0.25, -4}}"),
    )
}

fn determinism() -> Check {
    let bin = env!("CARGO_BIN_EXE_geoball");
    let runs: [&[&str]; 4] = [
        &["table"],
        &["table", "--output", "json"],
        &["sweep", "--space", "sphere", "--dim", "3", "--r-min", "pi/8", "--r-max", "5pi/8", "--steps", "9", "--output", "csv"],
        &["sweep", "--space", "hyperbolic", "--dim", "2", "--r-min", "0.5", "--r-max", "4", "--steps", "8", "--output", "json"],
    ];
    let mut identical = 0;
    for args in runs {
        // different thread counts must not change the sweep output
        let outputs: Vec<_> = ["1", "4"]
            .iter()
            .map(|threads| Command::new(bin).args(args).env("RAYON_NUM_THREADS", threads).output().unwrap())
            .collect();
        if outputs.iter().all(|o| o.status.success() && !o.stdout.is_empty())
            && outputs[0].stdout == outputs[1].stdout
        {
            identical += 1;
        }
    }
    check(identical == runs.len(), format!("{identical}/{} repeated invocations byte-identical", runs.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("AC1", "table reproduction", table_reproduction),
        ("AC2", "exact equality cases", equality_cases),
        ("AC3", "euclidean closed form", euclidean_closed_form),
        ("AC4", "sandwich property", sandwich),
        ("AC5", "operator identity order", operator_identity),
        ("AC6", "constant test function coincidence", bcg_coincidence),
        ("AC7", "refinement convergence", refinement),
        ("AC8", "hyperbolic bounds", hyperbolic_bounds),
        ("AC9", "determinism", determinism),
    ];
    let mut failures = 0;
    for (id, name, run) in criteria {
        let result = run();
        if !result.pass {
            failures += 1;
        }
        println!("{id} {} {name}: {}", if result.pass { "PASS" } else { "FAIL" }, result.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
