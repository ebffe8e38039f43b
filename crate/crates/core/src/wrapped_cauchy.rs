//! Wrapped Cauchy laws `wC(a)` on the unit circle, `a = r e^{iΦ}` in the disc.
//!
//! ```text
//! p(φ) = (1/2π) (1 − r²) / (1 − 2r cos(φ − Φ) + r²) = (1/2π) (1 − |a|²) / |e^{iφ} − a|²
//! ```
//!
//! The family is the orbit of the uniform law under disc automorphisms, and
//! `a` is both the parameter and the mean `E[e^{iφ}]`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::disc::{CirclePoint, DiscPoint, MoebiusTransform};
use crate::rng::RngStream;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WrappedCauchy {
    a: DiscPoint,
}

impl WrappedCauchy {
    pub fn new(a: DiscPoint) -> Self {
        WrappedCauchy { a }
    }

    pub fn uniform() -> Self {
        WrappedCauchy { a: DiscPoint::ORIGIN }
    }

    pub fn location(&self) -> DiscPoint {
        self.a
    }

    /// Density in the `(r, Φ)` form.
    pub fn pdf(&self, phi: CirclePoint) -> f64 {
        let r = self.a.modulus();
        let big_phi = self.a.arg();
        (1.0 - r * r) / (1.0 - 2.0 * r * (phi.phi() - big_phi).cos() + r * r) / TAU
    }

    /// Density in the complex form `(1 − |a|²) / |e^{iφ} − a|²`.
    pub fn pdf_complex(&self, phi: CirclePoint) -> f64 {
        let a = self.a.to_complex();
        (1.0 - a.norm_sqr()) / (phi.to_complex() - a).norm_sqr() / TAU
    }

    /// The boundary map `w ↦ (w + a) / (1 + āw)`, i.e. `g_a` after a half
    /// rotation. It sends the uniform law to `wC(a)` and is the identity at `a = 0`.
    fn uniform_to_self(&self) -> MoebiusTransform {
        MoebiusTransform::involution(self.a).compose(&MoebiusTransform::rotation(PI))
    }

    /// `n` draws: uniform angles pushed through a Möbius map taking 0 to `a`.
    pub fn sample(&self, rng: &mut RngStream, n: usize) -> Vec<CirclePoint> {
        let t = self.uniform_to_self();
        (0..n)
            .map(|_| {
                let u = CirclePoint::wrap(TAU * rng.next_uniform());
                t.apply_boundary(u)
            })
            .collect()
    }

    /// Law of `t(φ)` for `φ ~ wC(a)`: `wC(t(a))`.
    pub fn pushforward(&self, t: &MoebiusTransform) -> WrappedCauchy {
        WrappedCauchy { a: t.apply(self.a) }
    }

    /// `E[e^{iφ}] = a`.
    pub fn mean(&self) -> DiscPoint {
        self.a
    }
}

/// `(1/n) Σ e^{iφ_k}`.
pub fn circular_mean(samples: &[CirclePoint]) -> Complex64 {
    let sum: Complex64 = samples.iter().map(|p| p.to_complex()).sum();
    sum / samples.len() as f64
}
