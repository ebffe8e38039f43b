//! Numerical integration: globally adaptive Gauss–Kronrod (7/15 points), the
//! periodic trapezoid rule, and a polar product rule over the unit disc.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights at XGK[1], XGK[3], XGK[5], XGK[7].
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_SEGMENTS: usize = 20_000;

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod_segment<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Segment {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Segment {
        lo,
        hi,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// `∫_lo^hi f`, refining the worst segment until the summed error estimate is
/// below `max(abs_tol, rel_tol·|I|)`.
pub fn gauss_kronrod<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, abs_tol: f64, rel_tol: f64) -> Result<f64> {
    if lo == hi {
        return Ok(0.0);
    }
    let first = kronrod_segment(&f, lo, hi);
    let mut value = first.value;
    let mut error = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);

    loop {
        if !(value.is_finite() && error.is_finite()) {
            return Err(Error::numeric("integrand produced a non-finite value"));
        }
        if error <= abs_tol.max(rel_tol * value.abs()) {
            break;
        }
        if heap.len() >= MAX_SEGMENTS {
            return Err(Error::numeric(format!(
                "adaptive quadrature did not converge: estimate {value}, error {error:e}"
            )));
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        let left = kronrod_segment(&f, worst.lo, mid);
        let right = kronrod_segment(&f, mid, worst.hi);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // running sums drift; resum occasionally
        if heap.len() % 256 == 0 {
            value = heap.iter().map(|s| s.value).sum();
            error = heap.iter().map(|s| s.error).sum();
        }
    }
    Ok(heap.iter().map(|s| s.value).sum())
}

/// `∫_0^{2π} f` for a smooth `2π`-periodic `f`, doubling the node count until
/// two successive estimates agree to `rel_tol` (or `abs_tol`).
pub fn periodic_trapezoid<F: Fn(f64) -> f64>(f: F, rel_tol: f64, abs_tol: f64) -> Result<f64> {
    const MIN_NODES: usize = 64;
    const MAX_NODES: usize = 1 << 22;

    let mut n = 16usize;
    let mut sum: f64 = (0..n).map(|k| f(TAU * k as f64 / n as f64)).sum();
    let mut estimate = sum * TAU / n as f64;
    loop {
        // new nodes are the midpoints of the current grid
        let h = TAU / n as f64;
        let mids: f64 = (0..n).map(|k| f(h * (k as f64 + 0.5))).sum();
        sum += mids;
        n *= 2;
        let refined = sum * TAU / n as f64;
        if !refined.is_finite() {
            return Err(Error::numeric("periodic integrand produced a non-finite value"));
        }
        let delta = (refined - estimate).abs();
        estimate = refined;
        if n >= MIN_NODES && delta <= (rel_tol * refined.abs()).max(abs_tol) {
            return Ok(refined);
        }
        if n >= MAX_NODES {
            return Err(Error::numeric(format!(
                "periodic trapezoid did not converge with {n} nodes"
            )));
        }
    }
}

/// `∫_{|z|<1} f(z) dA(z)` in polar coordinates.
///
/// The radial variable is `r = 1 − (1 − v)²`, which absorbs integrable
/// `(1 − r)^{−1/2}` growth at the rim. Angular integrals use the periodic
/// trapezoid rule. `f` may be called at points rounding onto the unit circle.
pub fn disc_integral<F: Fn(Complex64) -> f64>(f: F, abs_tol: f64) -> Result<f64> {
    let radial = |v: f64| -> f64 {
        let w = 1.0 - v;
        let r = 1.0 - w * w;
        let ring = periodic_trapezoid(|t| f(Complex64::from_polar(r, t)), 1e-12, 1e-15).unwrap_or(f64::NAN);
        ring * r * 2.0 * w
    };
    gauss_kronrod(radial, 0.0, 1.0, abs_tol, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let v = gauss_kronrod(|x| x.powi(5) - 2.0 * x, 0.0, 2.0, 1e-14, 0.0).unwrap();
        assert!((v - (64.0 / 6.0 - 4.0)).abs() < 1e-13);
    }

    #[test]
    fn endpoint_singularity() {
        // ∫_0^1 x^{-1/2} = 2
        let v = gauss_kronrod(|x| x.powf(-0.5), 0.0, 1.0, 1e-10, 0.0).unwrap();
        assert!((v - 2.0).abs() < 1e-9);
    }

    #[test]
    fn empty_interval() {
        assert_eq!(gauss_kronrod(|x| x, 1.0, 1.0, 1e-10, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn non_finite_is_an_error() {
        assert!(gauss_kronrod(|_| f64::NAN, 0.0, 1.0, 1e-10, 0.0).is_err());
    }

    #[test]
    fn trapezoid_on_periodic_function() {
        // (1/2π)∫ e^{cos t} dt = I_0(1)
        let v = periodic_trapezoid(|t| t.cos().exp(), 1e-14, 0.0).unwrap() / TAU;
        assert!((v - 1.266_065_877_752_008_4).abs() < 1e-14);
    }

    #[test]
    fn disc_area_and_moment() {
        let area = disc_integral(|_| 1.0, 1e-12).unwrap();
        assert!((area - std::f64::consts::PI).abs() < 1e-11);
        let m = disc_integral(|z| z.norm_sqr(), 1e-12).unwrap();
        assert!((m - std::f64::consts::PI / 2.0).abs() < 1e-11);
    }
}
