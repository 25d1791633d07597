//! Bessel functions of the first kind of real order and their first zero.

use std::f64::consts::PI;

use crate::special::ln_gamma;

/// Orders above this use Miller's downward recurrence instead of the
/// ascending series.
const SERIES_MAX_ORDER: f64 = 10.0;

// Σ_m (-x²/4)^m / (m! (ν+1)_m) = Γ(ν+1) (x/2)^{-ν} J_ν(x)
fn reduced_series(nu: f64, x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 1..1000 {
        let m = m as f64;
        term *= q / (m * (nu + m));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() && m > -q {
            break;
        }
    }
    sum
}

fn miller(nu: f64, x: f64) -> f64 {
    let top = nu.floor() as usize;
    let alpha = nu - top as f64;
    let start = top.max(x as usize) + 30 + (40.0 * (top.max(x as usize) as f64)).sqrt() as usize;
    let start = start + start % 2;

    // j[k] ∝ J_{α+k}(x), recurred downward from k = start.
    let mut next = 0.0;
    let mut current = 1e-30;
    let mut target = 0.0;
    let mut norm = 0.0;
    for k in (0..=start).rev() {
        if k == top {
            target = current;
        }
        if k % 2 == 0 {
            let i = (k / 2) as f64;
            let coef = if k == 0 {
                ln_gamma(alpha + 1.0).exp()
            } else {
                (alpha + 2.0 * i) / (alpha + i) * (ln_gamma(alpha + i + 1.0) - ln_gamma(i + 1.0)).exp()
            };
            norm += coef * current;
        }
        if k > 0 {
            let prev = 2.0 * (alpha + k as f64) / x * current - next;
            next = current;
            current = prev;
            if current.abs() > 1e250 {
                current *= 1e-250;
                next *= 1e-250;
                target *= 1e-250;
                norm *= 1e-250;
            }
        }
    }
    // Σ (α+2i) Γ(α+i)/i! J_{α+2i}(x) = (x/2)^α
    target * (0.5 * x).powf(alpha) / norm
}

/// `J_ν(x)` for `ν ≥ 0`, `x ≥ 0`.
pub fn bessel_j(nu: f64, x: f64) -> f64 {
    assert!(nu >= 0.0 && x >= 0.0, "bessel_j needs nonnegative order and argument");
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    if nu > SERIES_MAX_ORDER {
        miller(nu, x)
    } else {
        let log_prefactor = nu * (0.5 * x).ln() - ln_gamma(nu + 1.0);
        log_prefactor.exp() * reduced_series(nu, x)
    }
}

// Same zeros as J_ν on x > 0, positive before the first.
fn zero_target(nu: f64, x: f64) -> f64 {
    if nu > SERIES_MAX_ORDER {
        miller(nu, x)
    } else {
        reduced_series(nu, x)
    }
}

fn initial_guess(nu: f64) -> f64 {
    if nu <= 2.5 {
        // McMahon, first zero
        let mu = 4.0 * nu * nu;
        let beta = (0.75 + 0.5 * nu) * PI;
        let b8 = 8.0 * beta;
        beta - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3))
    } else {
        // large-order expansion
        let c = nu.cbrt();
        nu + 1.855_757_081_489_239 * c + 1.033_150_3 / c
    }
}

/// First positive zero `j_{ν,1}` of `J_ν`, `ν ≥ 0`.
///
/// Starts from an asymptotic guess, walks to a sign change no lower than
/// `ν` (below which `J_ν` has no zero) and bisects to machine precision.
pub fn bessel_zero(nu: f64) -> f64 {
    assert!(nu >= 0.0 && nu.is_finite(), "bessel_zero needs a finite order ν ≥ 0");
    let guess = initial_guess(nu);
    let mut lo = (guess - 1.0).max(nu);
    if zero_target(nu, lo) <= 0.0 {
        lo = nu;
    }
    let mut hi = lo + 0.5;
    while zero_target(nu, hi) > 0.0 {
        lo = hi;
        hi += 0.5;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if zero_target(nu, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
