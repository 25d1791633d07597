//! Uniform radial grids, sampled radial functions, and the quadrature rules
//! used by every integral in the crate.
//!
//! Sampled functions are integrated with composite Simpson. Cumulative
//! integrals reuse the Simpson panels `[t_{2m}, t_{2m+2}]`; at the odd
//! midpoint nodes the partial panel is closed with the three-point
//! half-panel rule, so `cumulative_from_zero + cumulative_to_r` equals the
//! full Simpson integral at every node.
//!
//! Integrands known in closed form (the volume density `f^{n-1}`) are
//! integrated per interval with five-point Gauss–Legendre, which keeps
//! full order next to the origin where `f^{n-1}(s) ~ s^{n-1}`.

use crate::error::{Error, Result};

/// Default number of grid intervals.
pub const DEFAULT_INTERVALS: usize = 2048;

/// Smallest accepted number of grid intervals.
pub const MIN_INTERVALS: usize = 64;

/// Uniform grid `0 = t_0 < t_1 < … < t_N = r` with `N` even.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    radius: f64,
    intervals: usize,
}

impl RadialGrid {
    pub fn new(radius: f64, intervals: usize) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::Grid(format!("radius must be positive, got {radius}")));
        }
        if intervals < MIN_INTERVALS || intervals % 2 != 0 {
            return Err(Error::Grid(format!(
                "interval count must be even and at least {MIN_INTERVALS}, got {intervals}"
            )));
        }
        Ok(Self { radius, intervals })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Number of intervals `N`; there are `N + 1` nodes.
    pub fn intervals(&self) -> usize {
        self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals + 1
    }

    pub fn step(&self) -> f64 {
        self.radius / self.intervals as f64
    }

    pub fn node(&self, k: usize) -> f64 {
        debug_assert!(k <= self.intervals);
        if k == self.intervals {
            self.radius
        } else {
            self.radius * k as f64 / self.intervals as f64
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.intervals).map(move |k| self.node(k))
    }
}

/// Values of a radial function at the nodes of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialFunction {
    grid: RadialGrid,
    values: Vec<f64>,
}

impl RadialFunction {
    pub fn from_values(grid: RadialGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Grid(format!(
                "expected {} samples, got {}",
                grid.len(),
                values.len()
            )));
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Grid(format!("non-finite sample at node {k}")));
        }
        Ok(Self { grid, values })
    }

    /// Samples `f` at every node. Panics if `f` returns a non-finite value.
    pub fn from_fn(grid: RadialGrid, f: impl Fn(f64) -> f64) -> Self {
        let values: Vec<f64> = grid.nodes().map(f).collect();
        assert!(
            values.iter().all(|v| v.is_finite()),
            "sampled function is not finite on the grid"
        );
        Self { grid, values }
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn at(&self, k: usize) -> f64 {
        self.values[k]
    }

    /// Value at the outer node `t_N = r`.
    pub fn last(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scaled(&self, c: f64) -> Self {
        self.map(|v| c * v)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self::from_fn_values(self.grid, self.values.iter().map(|&v| f(v)).collect())
    }

    /// `a·self + b·other`. Panics if the grids differ.
    pub fn combine(&self, a: f64, other: &Self, b: f64) -> Self {
        assert_eq!(self.grid, other.grid, "radial functions live on different grids");
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| a * x + b * y)
            .collect();
        Self::from_fn_values(self.grid, values)
    }

    fn from_fn_values(grid: RadialGrid, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self { grid, values }
    }
}

fn simpson_panel(h: f64, a: f64, m: f64, b: f64) -> f64 {
    h / 3.0 * (a + 4.0 * m + b)
}

/// Composite Simpson value of `∫_0^r fn(t) dt`.
pub fn integrate(func: &RadialFunction) -> f64 {
    let h = func.grid.step();
    let v = &func.values;
    let mut total = 0.0;
    for m in 0..func.grid.intervals() / 2 {
        let k = 2 * m;
        total += simpson_panel(h, v[k], v[k + 1], v[k + 2]);
    }
    total
}

/// `F(t_k) = ∫_0^{t_k} fn`, with `F(0) = 0` and `F(r) = integrate(fn)`.
pub fn cumulative_from_zero(func: &RadialFunction) -> RadialFunction {
    let h = func.grid.step();
    let v = &func.values;
    let n = func.grid.intervals();
    let mut out = vec![0.0; n + 1];
    let mut acc = 0.0;
    for m in 0..n / 2 {
        let k = 2 * m;
        out[k + 1] = acc + h / 12.0 * (5.0 * v[k] + 8.0 * v[k + 1] - v[k + 2]);
        acc += simpson_panel(h, v[k], v[k + 1], v[k + 2]);
        out[k + 2] = acc;
    }
    RadialFunction::from_fn_values(func.grid, out)
}

/// `G(t_k) = ∫_{t_k}^r fn`, with `G(r) = 0`.
pub fn cumulative_to_r(func: &RadialFunction) -> RadialFunction {
    let h = func.grid.step();
    let v = &func.values;
    let n = func.grid.intervals();
    let mut out = vec![0.0; n + 1];
    let mut acc = 0.0;
    for m in (0..n / 2).rev() {
        let k = 2 * m;
        out[k + 1] = acc + h / 12.0 * (-v[k] + 8.0 * v[k + 1] + 5.0 * v[k + 2]);
        acc += simpson_panel(h, v[k], v[k + 1], v[k + 2]);
        out[k] = acc;
    }
    RadialFunction::from_fn_values(func.grid, out)
}

const GL5_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683_1,
    0.0,
    0.538_469_310_105_683_1,
    0.906_179_845_938_664,
];
const GL5_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_47,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_47,
    0.236_926_885_056_189_1,
];

fn gl5_points(a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    GL5_NODES
        .iter()
        .zip(GL5_WEIGHTS)
        .map(move |(x, w)| (mid + half * x, half * w))
}

/// Composite five-point Gauss–Legendre on `[a, b]` with `panels` panels.
pub fn gauss_legendre(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + h * p as f64;
        let hi = if p + 1 == panels { b } else { lo + h };
        total += gl5_points(lo, hi).map(|(x, w)| w * f(x)).sum::<f64>();
    }
    total
}

/// `∫_0^{t_k} f` at every node for a closed-form integrand.
pub fn cumulative_of(grid: &RadialGrid, f: impl Fn(f64) -> f64) -> RadialFunction {
    let mut out = Vec::with_capacity(grid.len());
    let mut acc = 0.0;
    out.push(0.0);
    for k in 0..grid.intervals() {
        acc += gl5_points(grid.node(k), grid.node(k + 1))
            .map(|(x, w)| w * f(x))
            .sum::<f64>();
        out.push(acc);
    }
    let values = out;
    RadialFunction::from_fn_values(*grid, values)
}

/// Product-integration rule for `∫_0^{t_k} w(s) u(s) ds` with a closed-form
/// weight `w` and a sampled `u`.
///
/// On each interval `u` is replaced by the cubic through the four nearest
/// nodes and the moments of `w` against the Lagrange basis are precomputed
/// with Gauss–Legendre, so applying the rule is a single pass over `u`.
#[derive(Debug, Clone)]
pub struct WeightedCumulative {
    grid: RadialGrid,
    stencil: Vec<usize>,
    weights: Vec<[f64; 4]>,
}

impl WeightedCumulative {
    pub fn new(grid: &RadialGrid, weight: impl Fn(f64) -> f64) -> Self {
        let n = grid.intervals();
        let h = grid.step();
        let mut stencil = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for k in 0..n {
            let start = k.saturating_sub(1).min(n - 3);
            let origin = grid.node(start);
            let mut moments = [0.0; 4];
            for (x, w) in gl5_points(grid.node(k), grid.node(k + 1)) {
                let xi = (x - origin) / h;
                let wx = w * weight(x);
                for (j, m) in moments.iter_mut().enumerate() {
                    *m += wx * lagrange4(j, xi);
                }
            }
            stencil.push(start);
            weights.push(moments);
        }
        Self { grid: *grid, stencil, weights }
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn apply(&self, u: &RadialFunction) -> RadialFunction {
        assert_eq!(u.grid, self.grid, "function and rule live on different grids");
        let v = &u.values;
        let mut out = Vec::with_capacity(v.len());
        let mut acc = 0.0;
        out.push(0.0);
        for (start, w) in self.stencil.iter().zip(&self.weights) {
            let s = &v[*start..*start + 4];
            acc += w[0] * s[0] + w[1] * s[1] + w[2] * s[2] + w[3] * s[3];
            out.push(acc);
        }
        RadialFunction::from_fn_values(self.grid, out)
    }
}

// Cubic Lagrange basis on the nodes 0, 1, 2, 3.
fn lagrange4(j: usize, x: f64) -> f64 {
    match j {
        0 => -(x - 1.0) * (x - 2.0) * (x - 3.0) / 6.0,
        1 => x * (x - 2.0) * (x - 3.0) / 2.0,
        2 => -x * (x - 1.0) * (x - 3.0) / 2.0,
        3 => x * (x - 1.0) * (x - 2.0) / 6.0,
        _ => unreachable!(),
    }
}

/// `(w v')'` at the interior nodes `1..N-1`, by the compact central stencil
/// with `w` evaluated at the half nodes. Entry `i` belongs to node `i + 1`.
pub fn divergence_form(func: &RadialFunction, weight: impl Fn(f64) -> f64) -> Vec<f64> {
    let grid = func.grid;
    let h = grid.step();
    let v = &func.values;
    (1..grid.intervals())
        .map(|k| {
            let t = grid.node(k);
            let right = weight(t + 0.5 * h) * (v[k + 1] - v[k]);
            let left = weight(t - 0.5 * h) * (v[k] - v[k - 1]);
            (right - left) / (h * h)
        })
        .collect()
}
