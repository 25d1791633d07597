//! Radius literals: plain decimals or rational multiples of π such as
//! `pi/8`, `3pi/8`, `3*pi/8`, `π/2` and `2pi`.

use std::f64::consts::PI;

pub fn parse_radius(text: &str) -> Result<f64, String> {
    let s = text.trim().to_ascii_lowercase().replace('π', "pi");
    let value = match s.find("pi") {
        None => s.parse::<f64>().map_err(|_| format!("`{text}` is neither a number nor a multiple of pi"))?,
        Some(at) => {
            let head = s[..at].trim_end_matches('*').trim();
            let tail = s[at + 2..].trim();
            let numerator = if head.is_empty() { 1 } else { integer(head, text)? };
            let denominator = match tail.strip_prefix('/') {
                Some(d) => integer(d.trim(), text)?,
                None if tail.is_empty() => 1,
                None => return Err(format!("unexpected `{tail}` after pi in `{text}`")),
            };
            if denominator == 0 {
                return Err(format!("zero denominator in `{text}`"));
            }
            numerator as f64 * PI / denominator as f64
        }
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("`{text}` is not finite"))
    }
}

fn integer(part: &str, text: &str) -> Result<u64, String> {
    part.parse().map_err(|_| format!("`{part}` in `{text}` is not a nonnegative integer"))
}

/// Shortest literal for `k π / 8`-style radii, used for table labels.
pub fn pi_fraction_label(numerator: u64, denominator: u64) -> String {
    match (numerator, denominator) {
        (1, 1) => "pi".into(),
        (1, d) => format!("pi/{d}"),
        (k, 1) => format!("{k}pi"),
        (k, d) => format!("{k}pi/{d}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_fractions_of_pi() {
        assert_eq!(parse_radius("pi/8").unwrap(), PI / 8.0);
        assert_eq!(parse_radius("3pi/8").unwrap(), 3.0 * PI / 8.0);
        assert_eq!(parse_radius(" 3*pi / 8 ").unwrap(), 3.0 * PI / 8.0);
        assert_eq!(parse_radius("π/2").unwrap(), PI / 2.0);
        assert_eq!(parse_radius("2PI").unwrap(), 2.0 * PI);
        assert_eq!(parse_radius("pi").unwrap(), PI);
    }

    #[test]
    fn accepts_decimals() {
        assert_eq!(parse_radius("0.5").unwrap(), 0.5);
        assert_eq!(parse_radius("1e-1").unwrap(), 0.1);
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "pi/0", "pi/2.5", "1.5pi", "pi8", "x", "-pi/2", "inf", "pi/"] {
            assert!(parse_radius(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn labels_round_trip() {
        for (k, d) in [(1, 8), (3, 8), (1, 1), (2, 1), (5, 8)] {
            let label = pi_fraction_label(k, d);
            assert_eq!(parse_radius(&label).unwrap(), k as f64 * PI / d as f64);
        }
    }
}
