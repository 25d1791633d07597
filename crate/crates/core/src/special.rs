//! Gamma function and the area of the unit sphere.

use std::f64::consts::PI;

// Lanczos approximation, g = 7, nine coefficients.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(z: f64) -> f64 {
    // z is the shifted argument x - 1
    let mut acc = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    acc
}

/// Gamma function for positive arguments.
pub fn gamma(x: f64) -> f64 {
    assert!(x > 0.0, "gamma is only implemented for positive arguments");
    if x < 0.5 {
        // reflection keeps the series in its accurate range
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * lanczos_sum(z)
}

/// Natural log of the gamma function for positive arguments.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma is only implemented for positive arguments");
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
}

/// (n-1)-volume of the unit sphere S^{n-1} in R^n, `2 π^{n/2} / Γ(n/2)`.
pub fn unit_sphere_area(n: usize) -> f64 {
    let half = n as f64 / 2.0;
    2.0 * PI.powf(half) / gamma(half)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn integer_arguments_are_factorials() {
        let mut fact = 1.0;
        for k in 1..=15 {
            assert_relative_eq!(gamma(k as f64), fact, max_relative = 1e-13);
            assert_relative_eq!(ln_gamma(k as f64), fact.ln(), epsilon = 1e-12);
            fact *= k as f64;
        }
    }

    #[test]
    fn half_integer_arguments() {
        // Γ(k + 1/2) = (2k)! / (4^k k!) √π
        let sqrt_pi = PI.sqrt();
        assert_relative_eq!(gamma(0.5), sqrt_pi, max_relative = 1e-14);
        let mut expected = sqrt_pi;
        for k in 1..12 {
            expected *= k as f64 - 0.5;
            assert_relative_eq!(gamma(k as f64 + 0.5), expected, max_relative = 1e-13);
        }
        assert_relative_eq!(gamma(4.5), 11.631_728_396_567_45, max_relative = 1e-13);
    }

    #[test]
    fn sphere_areas() {
        assert_relative_eq!(unit_sphere_area(2), 2.0 * PI, max_relative = 1e-14);
        assert_relative_eq!(unit_sphere_area(3), 4.0 * PI, max_relative = 1e-14);
        assert_relative_eq!(unit_sphere_area(4), 2.0 * PI * PI, max_relative = 1e-14);
        assert_relative_eq!(unit_sphere_area(5), 8.0 * PI * PI / 3.0, max_relative = 1e-14);
    }
}
