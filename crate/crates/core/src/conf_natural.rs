//! The conformally natural family `F(α, a)` on the hyperbolic disc.
//!
//! With respect to the hyperbolic area `τ dA` the density is
//!
//! ```text
//! p(z; α, a) = ((α − 1)/π) (1 − |g_a(z)|²)^α
//!            = ((α − 1)/π) (1 − |a|²)^α [(1 − |z|²) / |1 − āz|²]^α,    α > 1.
//! ```
//!
//! For fixed `α` the automorphism group acts transitively: `g_* F(α, a) = F(α, g(a))`.
//!
//! # Radial CDF
//!
//! `P{|Z| < b}` is an integral in `s = r²`, so its upper limit is `b²`. Stating
//! it with upper limit `√b` disagrees with direct integration of the density:
//! at `α = 2, a = 0, b = 0.5` the probability is `0.25`, not
//! `1 − (1 − √0.5) ≈ 0.707`. The sampler inverts the `b²` form accordingly.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::disc::{tau_density, DiscPoint, MoebiusTransform};
use crate::error::{Error, Result};
use crate::quadrature::gauss_kronrod;
use crate::rng::RngStream;
use crate::special::hyp2f1_aa1;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConfNatural {
    alpha: f64,
    a: DiscPoint,
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha.is_finite() && alpha > 1.0) {
        return Err(Error::domain(format!(
            "concentration alpha must be a finite value > 1, got {alpha}"
        )));
    }
    Ok(())
}

/// `1 − |g_a(z)|²`.
fn conformal_ratio(a: Complex64, z: Complex64) -> f64 {
    let den = (Complex64::new(1.0, 0.0) - a.conj() * z).norm_sqr();
    (1.0 - a.norm_sqr()) * (1.0 - z.norm_sqr()) / den
}

impl ConfNatural {
    pub fn new(alpha: f64, a: DiscPoint) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(ConfNatural { alpha, a })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn location(&self) -> DiscPoint {
        self.a
    }

    /// `c_α = (α − 1)/π`.
    pub fn normalizer(&self) -> f64 {
        (self.alpha - 1.0) / PI
    }

    /// Density with respect to the hyperbolic area measure `τ dA`.
    pub fn pdf_hyp(&self, z: DiscPoint) -> f64 {
        self.normalizer() * conformal_ratio(self.a.to_complex(), z.to_complex()).powf(self.alpha)
    }

    /// Density with respect to Euclidean area.
    pub fn pdf_lebesgue(&self, z: DiscPoint) -> f64 {
        self.pdf_hyp(z) * tau_density(z)
    }

    /// `ln pdf_hyp`, evaluated term by term so it stays finite near the rim.
    pub fn log_pdf(&self, z: DiscPoint) -> f64 {
        let a = self.a.to_complex();
        let z = z.to_complex();
        let lin = (Complex64::new(1.0, 0.0) - a.conj() * z).norm();
        (self.alpha - 1.0).ln() - PI.ln()
            + self.alpha * ((-a.norm_sqr()).ln_1p() + (-z.norm_sqr()).ln_1p() - 2.0 * lin.ln())
    }

    /// `P{|Z| < b}` for `b ∈ [0, 1]`.
    ///
    /// Closed forms cover `a = 0` and `α = 2`; everything else integrates the
    /// hypergeometric representation numerically.
    pub fn radial_cdf(&self, b: f64) -> Result<f64> {
        check_radius(b)?;
        if self.a.norm_sqr() == 0.0 {
            Ok(radial_cdf_centered(self.alpha, b))
        } else if self.alpha == 2.0 {
            Ok(radial_cdf_alpha2(self.a, b))
        } else {
            radial_cdf_quadrature(self.alpha, self.a, b)
        }
    }

    /// One draw. Uses two uniforms: the angle first, then the radius.
    pub fn sample_one(&self, rng: &mut RngStream) -> DiscPoint {
        MoebiusTransform::involution(self.a).apply(sample_centered(self.alpha, rng))
    }

    pub fn sample(&self, rng: &mut RngStream, n: usize) -> Vec<DiscPoint> {
        let g = MoebiusTransform::involution(self.a);
        (0..n).map(|_| g.apply(sample_centered(self.alpha, rng))).collect()
    }

    /// Law of `t(Z)`: `F(α, t(a))`.
    pub fn pushforward(&self, t: &MoebiusTransform) -> ConfNatural {
        ConfNatural {
            alpha: self.alpha,
            a: t.apply(self.a),
        }
    }

    /// Riemannian center of mass, which is the location parameter.
    pub fn mean(&self) -> DiscPoint {
        self.a
    }
}

/// An automorphism carrying `v` to `w`: `g_w ∘ g_v`.
pub fn transport(v: DiscPoint, w: DiscPoint) -> MoebiusTransform {
    MoebiusTransform::involution(w).compose(&MoebiusTransform::involution(v))
}

fn check_radius(b: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&b) {
        return Err(Error::domain(format!("radius b must lie in [0, 1], got {b}")));
    }
    Ok(())
}

/// `1 − (1 − b²)^{α−1}`, the `a = 0` radial CDF.
pub fn radial_cdf_centered(alpha: f64, b: f64) -> f64 {
    -((alpha - 1.0) * (-b * b).ln_1p()).exp_m1()
}

/// `(1 − |a|²)² b² / (1 − |a|² b²)²`, the `α = 2` radial CDF.
pub fn radial_cdf_alpha2(a: DiscPoint, b: f64) -> f64 {
    let c = a.norm_sqr();
    let s = b * b;
    let q = (1.0 - c) / (1.0 - c * s);
    q * q * s
}

/// `(α − 1)(1 − |a|²)^α ∫_0^{b²} (1 − s)^{α−2} 2F1(α, α; 1; |a|² s) ds` by
/// adaptive quadrature, absolute tolerance `1e-10`.
///
/// For `α < 2` the weight `(1 − s)^{α−2}` is unbounded near `s = 1`; there the
/// integral is taken in `t = (1 − s)^{α−1}` instead, which turns it into
/// `(1 − |a|²)^α ∫_{(1−b²)^{α−1}}^1 2F1(α, α; 1; |a|²(1 − t^{1/(α−1)})) dt`.
pub fn radial_cdf_quadrature(alpha: f64, a: DiscPoint, b: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_radius(b)?;
    if b == 0.0 {
        return Ok(0.0);
    }
    if b == 1.0 {
        return Ok(1.0);
    }
    let c = a.norm_sqr();
    let prefactor = (alpha * (-c).ln_1p()).exp();
    // the integrand is evaluated inside closures; keep the first failure
    let failure = std::cell::Cell::new(None);
    let f21 = |x: f64| match hyp2f1_aa1(alpha, x) {
        Ok(v) => v,
        Err(e) => {
            failure.set(Some(e));
            f64::NAN
        }
    };
    let integral = if alpha >= 2.0 {
        let integrand = |s: f64| (1.0 - s).powf(alpha - 2.0) * f21(c * s);
        gauss_kronrod(integrand, 0.0, b * b, 1e-10 / (prefactor * (alpha - 1.0)), 0.0).map(|v| (alpha - 1.0) * v)
    } else {
        let inv = 1.0 / (alpha - 1.0);
        let lower = ((alpha - 1.0) * (-b * b).ln_1p()).exp();
        let integrand = |t: f64| f21(c * (-(inv * t.ln()).exp_m1()).max(0.0));
        gauss_kronrod(integrand, lower, 1.0, 1e-10 / prefactor, 0.0)
    };
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok((prefactor * integral?).clamp(0.0, 1.0))
}

/// Radius with `P{|Z| < ρ} = u` under `F(α, 0)`: `ρ = √(1 − (1 − u)^{1/(α−1)})`.
pub fn radius_from_uniform(alpha: f64, u: f64) -> f64 {
    (-((-u).ln_1p() / (alpha - 1.0)).exp_m1()).sqrt()
}

/// One draw from `F(α, 0)`: angle `2π U₁`, radius from `U₂`.
pub fn sample_centered(alpha: f64, rng: &mut RngStream) -> DiscPoint {
    let psi = TAU * rng.next_uniform();
    let rho = radius_from_uniform(alpha, rng.next_uniform());
    DiscPoint::saturating(Complex64::from_polar(rho, psi))
}

/// Finite mixture `Σ wᵢ F(αᵢ, aᵢ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mixture {
    weights: Vec<f64>,
    components: Vec<ConfNatural>,
}

impl Mixture {
    pub fn new(weights: Vec<f64>, components: Vec<ConfNatural>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::domain("a mixture needs at least one component"));
        }
        if weights.len() != components.len() {
            return Err(Error::domain(format!(
                "{} weights given for {} components",
                weights.len(),
                components.len()
            )));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::domain("mixture weights must be finite and nonnegative"));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!("mixture weights must sum to 1, got {total}")));
        }
        Ok(Mixture { weights, components })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn components(&self) -> &[ConfNatural] {
        &self.components
    }

    /// Density with respect to `τ dA`.
    pub fn pdf(&self, z: DiscPoint) -> f64 {
        self.weights
            .iter()
            .zip(&self.components)
            .map(|(w, c)| w * c.pdf_hyp(z))
            .sum()
    }

    fn pick(&self, u: f64) -> &ConfNatural {
        let mut acc = 0.0;
        for (w, c) in self.weights.iter().zip(&self.components) {
            acc += w;
            if u < acc {
                return c;
            }
        }
        // u landed in the rounding gap below 1; take the last weighted component
        let last = self.weights.iter().rposition(|w| *w > 0.0).unwrap_or(0);
        &self.components[last]
    }

    /// Each draw picks a component by weight, then samples it.
    pub fn sample(&self, rng: &mut RngStream, n: usize) -> Vec<DiscPoint> {
        (0..n)
            .map(|_| {
                let u = rng.next_uniform();
                self.pick(u).sample_one(rng)
            })
            .collect()
    }
}
