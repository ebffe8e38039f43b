//! Geometry of the open unit disc.
//!
//! Points live in the Poincaré disc with line element `|dz| / (1 − |z|²)`, so
//! the induced area density is `τ(z) = 1 / (1 − |z|²)²` and the distance is
//! `d(z, w) = artanh |g_z(w)|`. This is half the curvature −1 distance; code
//! comparing against curvature −1 references must multiply by 2.
//!
//! Automorphisms are stored as `z ↦ e^{iθ}(a − z) / (1 − āz)`. Note that
//! `θ = 0, a = 0` is the antipodal map `z ↦ −z`; the identity is `θ = π, a = 0`
//! (see [`MoebiusTransform::identity`]).

use std::f64::consts::{PI, TAU};
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Points with modulus at or above this bound are rejected.
pub const MAX_MODULUS: f64 = 1.0 - 1e-15;

/// Largest argument passed to `artanh`.
const ARTANH_CLAMP: f64 = 1.0 - f64::EPSILON;

/// Modulus that out-of-range results of exact-but-rounded maps are pulled back to.
const SATURATED_MODULUS: f64 = 1.0 - 2e-15;

/// A point of the open unit disc.
#[derive(Clone, Copy, PartialEq)]
pub struct DiscPoint(Complex64);

impl DiscPoint {
    pub const ORIGIN: DiscPoint = DiscPoint(Complex64 { re: 0.0, im: 0.0 });

    pub fn new(re: f64, im: f64) -> Result<Self> {
        Self::from_complex(Complex64::new(re, im))
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::domain(format!(
                "disc point must be finite, got ({}, {})",
                z.re, z.im
            )));
        }
        let m = z.norm();
        if m >= MAX_MODULUS {
            return Err(Error::domain(format!("disc point must satisfy |z| < 1, got |z| = {m}")));
        }
        Ok(DiscPoint(z))
    }

    pub fn from_polar(radius: f64, angle: f64) -> Result<Self> {
        Self::from_complex(Complex64::from_polar(radius, angle))
    }

    /// Builds a point from a value that is inside the disc up to rounding.
    ///
    /// Finite values with modulus at or above [`MAX_MODULUS`] are pulled back
    /// radially. Panics on non-finite input.
    pub fn saturating(z: Complex64) -> Self {
        assert!(
            z.re.is_finite() && z.im.is_finite(),
            "non-finite value {z} passed to DiscPoint::saturating"
        );
        let m = z.norm();
        if m >= MAX_MODULUS {
            DiscPoint(z * (SATURATED_MODULUS / m))
        } else {
            DiscPoint(z)
        }
    }

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }

    pub fn to_complex(self) -> Complex64 {
        self.0
    }

    pub fn modulus(&self) -> f64 {
        self.0.norm()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.norm_sqr()
    }

    pub fn arg(&self) -> f64 {
        self.0.arg()
    }
}

impl fmt::Debug for DiscPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiscPoint({} + {}i)", self.0.re, self.0.im)
    }
}

/// A point of the unit circle, stored as an angle in `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct CirclePoint(f64);

impl CirclePoint {
    pub fn new(phi: f64) -> Result<Self> {
        if !phi.is_finite() {
            return Err(Error::domain(format!("angle must be finite, got {phi}")));
        }
        Ok(Self::wrap(phi))
    }

    pub(crate) fn wrap(phi: f64) -> Self {
        let w = phi.rem_euclid(TAU);
        CirclePoint(if w >= TAU { 0.0 } else { w })
    }

    pub fn phi(&self) -> f64 {
        self.0
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(1.0, self.0)
    }
}

/// Signed difference of two angles, reduced to `(−π, π]`.
pub fn angle_diff(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(TAU);
    if d > PI {
        d - TAU
    } else {
        d
    }
}

/// Tangent vector at a disc point, in the orthonormal frame aligned with the
/// coordinate axes. Its Euclidean length is its Riemannian length.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Tangent(pub Complex64);

impl Tangent {
    pub const ZERO: Tangent = Tangent(Complex64 { re: 0.0, im: 0.0 });

    pub fn new(re: f64, im: f64) -> Self {
        Tangent(Complex64::new(re, im))
    }

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn scale(self, s: f64) -> Self {
        Tangent(self.0 * s)
    }
}

impl std::ops::Add for Tangent {
    type Output = Tangent;
    fn add(self, rhs: Tangent) -> Tangent {
        Tangent(self.0 + rhs.0)
    }
}

impl std::ops::AddAssign for Tangent {
    fn add_assign(&mut self, rhs: Tangent) {
        self.0 += rhs.0;
    }
}

/// Disc automorphism `z ↦ e^{iθ}(a − z) / (1 − āz)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MoebiusTransform {
    a: DiscPoint,
    theta: f64,
}

impl MoebiusTransform {
    pub fn new(a: DiscPoint, theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::domain(format!("rotation angle must be finite, got {theta}")));
        }
        Ok(MoebiusTransform {
            a,
            theta: CirclePoint::wrap(theta).phi(),
        })
    }

    /// `g_a(z) = (a − z) / (1 − āz)`: swaps `0` and `a`, and is its own inverse.
    pub fn involution(a: DiscPoint) -> Self {
        MoebiusTransform { a, theta: 0.0 }
    }

    /// `θ = π, a = 0`.
    pub fn identity() -> Self {
        MoebiusTransform {
            a: DiscPoint::ORIGIN,
            theta: PI,
        }
    }

    /// `z ↦ e^{i·angle} z`.
    pub fn rotation(angle: f64) -> Self {
        MoebiusTransform {
            a: DiscPoint::ORIGIN,
            theta: CirclePoint::wrap(angle + PI).phi(),
        }
    }

    /// Rotation by π about `p`: fixes `p`, derivative −1 there.
    pub fn half_turn(p: DiscPoint) -> Self {
        let g = Self::involution(p);
        g.compose(&Self::rotation(PI)).compose(&g)
    }

    /// Hyperbolic translation along the geodesic through `from` and `to`,
    /// carrying `from` onto `to`.
    ///
    /// Unlike `g_to ∘ g_from` it commutes with isometries:
    /// `h ∘ transvection(x, y) ∘ h⁻¹ = transvection(h(x), h(y))`.
    pub fn transvection(from: DiscPoint, to: DiscPoint) -> Self {
        let mid = hyp_midpoint(from, to);
        Self::half_turn(mid).compose(&Self::half_turn(from))
    }

    pub fn a(&self) -> DiscPoint {
        self.a
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    fn rotor(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.theta)
    }

    /// The defining formula on any complex number with `āz ≠ 1`.
    pub fn apply_complex(&self, z: Complex64) -> Complex64 {
        let a = self.a.0;
        self.rotor() * (a - z) / (Complex64::new(1.0, 0.0) - a.conj() * z)
    }

    pub fn apply(&self, z: DiscPoint) -> DiscPoint {
        DiscPoint::saturating(self.apply_complex(z.0))
    }

    pub fn apply_boundary(&self, p: CirclePoint) -> CirclePoint {
        CirclePoint::wrap(self.apply_complex(p.to_complex()).arg())
    }

    /// `e^{iθ}(|a|² − 1) / (1 − āz)²`.
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let a = self.a.0;
        let den = Complex64::new(1.0, 0.0) - a.conj() * z;
        self.rotor() * (a.norm_sqr() - 1.0) / (den * den)
    }

    /// `self ∘ inner`.
    ///
    /// The composite's `a` is its zero, `inner⁻¹(self.a)`; its rotation comes
    /// from the phase of the derivative at the origin, which equals
    /// `e^{iθ}(|a|² − 1)`.
    pub fn compose(&self, inner: &MoebiusTransform) -> MoebiusTransform {
        let a = DiscPoint::saturating(inner.inverse().apply_complex(self.a.0));
        let d =
            self.derivative(inner.apply_complex(Complex64::new(0.0, 0.0))) * inner.derivative(Complex64::new(0.0, 0.0));
        MoebiusTransform {
            a,
            theta: CirclePoint::wrap((-d).arg()).phi(),
        }
    }

    /// Inverse is `(e^{iθ}a, −θ)`.
    pub fn inverse(&self) -> MoebiusTransform {
        MoebiusTransform {
            a: DiscPoint::saturating(self.rotor() * self.a.0),
            theta: CirclePoint::wrap(-self.theta).phi(),
        }
    }
}

/// `τ(z) = 1 / (1 − |z|²)²`, the hyperbolic area density.
pub fn tau_density(z: DiscPoint) -> f64 {
    let s = 1.0 - z.norm_sqr();
    1.0 / (s * s)
}

/// `|g_z(w)|` without constructing a transform.
fn pseudo_hyperbolic(z: Complex64, w: Complex64) -> f64 {
    ((z - w) / (Complex64::new(1.0, 0.0) - z.conj() * w)).norm()
}

/// `artanh |g_z(w)|`.
pub fn hyp_distance(z: DiscPoint, w: DiscPoint) -> f64 {
    pseudo_hyperbolic(z.0, w.0).min(ARTANH_CLAMP).atanh()
}

/// Riemannian logarithm: the tangent vector at `base` pointing to `z`, with
/// length `hyp_distance(base, z)`.
///
/// `g_base` carries the problem to the origin, where the log is
/// `artanh|u| · u/|u|`; its differential at 0 is the negative real
/// `|base|² − 1`, which in the orthonormal frame is just a sign flip.
pub fn hyp_log(base: DiscPoint, z: DiscPoint) -> Tangent {
    let u = MoebiusTransform::involution(base).apply_complex(z.0);
    let m = u.norm();
    if m == 0.0 {
        return Tangent::ZERO;
    }
    Tangent(u * (-m.min(ARTANH_CLAMP).atanh() / m))
}

/// Riemannian exponential, inverse of [`hyp_log`].
pub fn hyp_exp(base: DiscPoint, v: Tangent) -> DiscPoint {
    let n = v.norm();
    if n == 0.0 {
        return base;
    }
    let u = v.0 * (-n.tanh() / n);
    MoebiusTransform::involution(base).apply(DiscPoint::saturating(u))
}

/// Midpoint of the geodesic segment from `z` to `w`.
pub fn hyp_midpoint(z: DiscPoint, w: DiscPoint) -> DiscPoint {
    hyp_exp(z, hyp_log(z, w).scale(0.5))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(re: f64, im: f64) -> DiscPoint {
        DiscPoint::new(re, im).unwrap()
    }

    fn close(x: DiscPoint, y: DiscPoint, tol: f64) -> bool {
        (x.0 - y.0).norm() < tol
    }

    #[test]
    fn rejects_points_outside_disc() {
        assert!(DiscPoint::new(1.0, 0.0).is_err());
        assert!(DiscPoint::new(0.6, 0.8).is_err());
        assert!(DiscPoint::new(1.0 - 1e-16, 0.0).is_err());
        assert!(DiscPoint::new(f64::NAN, 0.0).is_err());
        assert!(DiscPoint::new(0.0, f64::INFINITY).is_err());
        assert!(DiscPoint::new(0.6, 0.79).is_ok());
    }

    #[test]
    fn involution_swaps_origin_and_parameter() {
        let a = p(0.3, 0.4);
        let g = MoebiusTransform::involution(a);
        assert!(close(g.apply(DiscPoint::ORIGIN), a, 1e-15));
        assert!(close(g.apply(a), DiscPoint::ORIGIN, 1e-15));
    }

    #[test]
    fn theta_zero_at_origin_is_antipodal() {
        let g = MoebiusTransform::new(DiscPoint::ORIGIN, 0.0).unwrap();
        assert!(close(g.apply(p(0.5, 0.0)), p(-0.5, 0.0), 1e-15));
        let id = MoebiusTransform::identity();
        assert!(close(id.apply(p(0.5, 0.2)), p(0.5, 0.2), 1e-15));
    }

    #[test]
    fn boundary_action() {
        let id = MoebiusTransform::identity();
        let q = id.apply_boundary(CirclePoint::new(1.0).unwrap());
        assert!((q.phi() - 1.0).abs() < 1e-15);

        let neg = MoebiusTransform::new(DiscPoint::ORIGIN, 0.0).unwrap();
        let q = neg.apply_boundary(CirclePoint::new(0.0).unwrap());
        assert!((q.phi() - PI).abs() < 1e-15);

        // (0.5 − 1) / (1 − 0.5) = −1
        let g = MoebiusTransform::involution(p(0.5, 0.0));
        let q = g.apply_boundary(CirclePoint::new(0.0).unwrap());
        assert!((q.phi() - PI).abs() < 1e-15);
    }

    #[test]
    fn compose_with_self_and_identity() {
        let g = MoebiusTransform::involution(p(0.3, 0.4));
        let gg = g.compose(&g);
        assert!(gg.a().modulus() < 1e-15);
        assert!((gg.theta() - PI).abs() < 1e-14);

        let t = MoebiusTransform::new(p(-0.2, 0.7), 2.5).unwrap();
        let c = MoebiusTransform::identity().compose(&t);
        assert!(close(c.a(), t.a(), 1e-15));
        assert!(angle_diff(c.theta(), t.theta()).abs() < 1e-14);
    }

    #[test]
    fn inverse_of_involution_is_itself() {
        let g = MoebiusTransform::involution(p(0.3, 0.4));
        let inv = g.inverse();
        assert!(close(inv.a(), g.a(), 1e-16));
        assert_eq!(inv.theta(), 0.0);
        let id = MoebiusTransform::identity().inverse();
        assert!(id.a().modulus() == 0.0);
        assert!((id.theta() - PI).abs() < 1e-15);
    }

    #[test]
    fn distance_examples() {
        assert_eq!(hyp_distance(DiscPoint::ORIGIN, DiscPoint::ORIGIN), 0.0);
        let d = hyp_distance(DiscPoint::ORIGIN, p(0.5, 0.0));
        assert!((d - 0.549_306_144_334_054_8).abs() < 1e-15);
    }

    #[test]
    fn distance_matches_line_element_integral() {
        // ∫_0^r dt / (1 − t²) by composite Simpson.
        let r = 0.5;
        let n = 2000;
        let h = r / n as f64;
        let f = |t: f64| 1.0 / (1.0 - t * t);
        let mut s = f(0.0) + f(r);
        for k in 1..n {
            let w = if k % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(k as f64 * h);
        }
        let integral = s * h / 3.0;
        assert!((hyp_distance(DiscPoint::ORIGIN, p(r, 0.0)) - integral).abs() < 1e-12);
    }

    #[test]
    fn distance_near_boundary_is_finite() {
        let z = DiscPoint::saturating(Complex64::new(1.0, 0.0));
        let w = DiscPoint::saturating(Complex64::new(-1.0, 0.0));
        assert!(hyp_distance(z, w).is_finite());
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau_density(DiscPoint::ORIGIN), 1.0);
        assert!((tau_density(p(0.5, 0.0)) - 16.0 / 9.0).abs() < 1e-15);
        let mut last = 0.0;
        for k in 0..100 {
            let t = tau_density(p(k as f64 / 100.0, 0.0));
            assert!(t > last);
            last = t;
        }
    }

    #[test]
    fn log_exp_examples() {
        let v = hyp_log(DiscPoint::ORIGIN, p(0.5, 0.0));
        assert!((v.re() - 0.5f64.atanh()).abs() < 1e-15);
        assert!(v.im().abs() < 1e-16);

        let z = p(0.1, -0.6);
        assert_eq!(hyp_exp(z, Tangent::ZERO), z);
        assert_eq!(hyp_log(z, z), Tangent::ZERO);
    }

    #[test]
    fn transvection_moves_from_to() {
        let x = p(0.2, -0.5);
        let y = p(-0.6, 0.1);
        let t = MoebiusTransform::transvection(x, y);
        assert!(close(t.apply(x), y, 1e-13));
        let h = MoebiusTransform::half_turn(x);
        assert!(close(h.apply(x), x, 1e-14));
        assert!((h.derivative(x.to_complex()) + Complex64::new(1.0, 0.0)).norm() < 1e-13);
    }
}
