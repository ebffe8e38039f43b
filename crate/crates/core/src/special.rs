//! `2F1(α, α; 1; x)` and the circular integral it equals.
//!
//! For `|x| < 1` and `α > 0`,
//!
//! ```text
//! (1/2π) ∫_0^{2π} dt / |x − e^{it}|^{2α} = 2F1(α, α; 1; |x|²)
//! ```
//!
//! [`poisson_circle_integral`] computes the left side by quadrature and is used
//! to check [`hyp2f1_aa1`], which sums the series.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::quadrature::periodic_trapezoid;

/// Above this argument the series is evaluated after Euler's transformation.
pub const EULER_CROSSOVER: f64 = 0.9;

const MAX_TERMS: usize = 1_000_000;

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha.is_finite() && alpha > 1.0) {
        return Err(Error::domain(format!("alpha must be a finite value > 1, got {alpha}")));
    }
    Ok(())
}

/// `Σ_k [(b)_k / k!]² x^k`, stopping once a term drops below `1e-16` of the sum.
fn squared_pochhammer_series(b: f64, x: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..MAX_TERMS {
        let k = k as f64;
        let q = (b + k) / (k + 1.0);
        term *= q * q * x;
        sum += term;
        if term.abs() < 1e-16 * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::numeric(format!(
        "2F1 series with parameter {b} at x = {x} did not converge in {MAX_TERMS} terms"
    )))
}

/// Gauss hypergeometric `2F1(α, α; 1; x)` for `α > 1`, `0 ≤ x < 1`.
///
/// Past `x = 0.9` it uses
/// `2F1(α, α; 1; x) = (1 − x)^{1−2α} 2F1(1 − α, 1 − α; 1; x)`, whose
/// coefficients decay like `k^{−2α}` instead of growing.
pub fn hyp2f1_aa1(alpha: f64, x: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(0.0..1.0).contains(&x) {
        return Err(Error::domain(format!("2F1 argument must lie in [0, 1), got {x}")));
    }
    if x > EULER_CROSSOVER {
        let scale = (1.0 - x).powf(1.0 - 2.0 * alpha);
        Ok(scale * squared_pochhammer_series(1.0 - alpha, x)?)
    } else {
        squared_pochhammer_series(alpha, x)
    }
}

/// `(1/2π) ∫_0^{2π} dt / |m − e^{it}|^{2α}` by the periodic trapezoid rule.
///
/// Depends on `x` only through its modulus `m`, so only the modulus is taken.
pub fn poisson_circle_integral(x_mod: f64, alpha: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&x_mod) {
        return Err(Error::domain(format!("modulus must lie in [0, 1), got {x_mod}")));
    }
    if !alpha.is_finite() {
        return Err(Error::domain(format!("alpha must be finite, got {alpha}")));
    }
    let m = x_mod;
    let gap = (1.0 - m) * (1.0 - m);
    // |m − e^{it}|² = (1 − m)² + 4m sin²(t/2)
    let integrand = |t: f64| {
        let s = (0.5 * t).sin();
        (gap + 4.0 * m * s * s).powf(-alpha)
    };
    Ok(periodic_trapezoid(integrand, 1e-13, 0.0)? / TAU)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_zero() {
        for alpha in [1.5, 2.0, 7.25] {
            assert_eq!(hyp2f1_aa1(alpha, 0.0).unwrap(), 1.0);
            assert!((poisson_circle_integral(0.0, alpha).unwrap() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn alpha_two_closed_form() {
        assert!((hyp2f1_aa1(2.0, 0.5).unwrap() - 12.0).abs() < 1e-12);
        let mut x: f64 = 0.0;
        while x <= 0.95 {
            let want = (1.0 + x) / (1.0 - x).powi(3);
            let got = hyp2f1_aa1(2.0, x).unwrap();
            assert!((got - want).abs() <= 1e-12 * want, "x = {x}: {got} vs {want}");
            x += 0.0125;
        }
    }

    #[test]
    fn circle_integral_alpha_two() {
        // 2F1(2, 2; 1; 0.25) = 1.25 / 0.75³
        let v = poisson_circle_integral(0.5, 2.0).unwrap();
        assert!((v - 1.25 / 0.421_875).abs() < 1e-12);
    }

    #[test]
    fn series_matches_integral() {
        let s = hyp2f1_aa1(3.0, 0.25).unwrap();
        let q = poisson_circle_integral(0.5, 3.0).unwrap();
        assert!((s - q).abs() < 1e-10 * s);
    }

    #[test]
    fn crossover_is_continuous() {
        for alpha in [1.5, 2.5, 10.0] {
            let below = hyp2f1_aa1(alpha, EULER_CROSSOVER).unwrap();
            let above = hyp2f1_aa1(alpha, EULER_CROSSOVER + 1e-12).unwrap();
            assert!((below - above).abs() < 1e-9 * below);
        }
    }

    #[test]
    fn strictly_increasing() {
        for alpha in [1.5, 4.0] {
            let mut last = 0.0;
            for k in 0..=99 {
                let v = hyp2f1_aa1(alpha, k as f64 / 100.0).unwrap();
                assert!(v > last);
                last = v;
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(hyp2f1_aa1(2.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(hyp2f1_aa1(2.0, -0.1), Err(Error::Domain(_))));
        assert!(matches!(hyp2f1_aa1(1.0, 0.5), Err(Error::Domain(_))));
        assert!(matches!(poisson_circle_integral(1.0, 2.0), Err(Error::Domain(_))));
    }
}
