//! Karcher means and maximum-likelihood fitting of `F(α, a)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::conf_natural::check_alpha;
use crate::disc::{hyp_distance, hyp_exp, hyp_log, DiscPoint, MoebiusTransform, Tangent};
use crate::error::{Error, Result};

/// Gradient descent settings for [`karcher_mean`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KarcherConfig {
    /// Stop once the Riemannian gradient norm drops below this.
    pub tol: f64,
    pub max_iter: usize,
    /// Initial step, halved whenever a step would increase the objective.
    pub step: f64,
}

impl Default for KarcherConfig {
    fn default() -> Self {
        KarcherConfig {
            tol: 1e-9,
            max_iter: 1000,
            step: 1.0,
        }
    }
}

impl KarcherConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::domain(format!("karcher tol must be > 0, got {}", self.tol)));
        }
        if self.max_iter < 1 {
            return Err(Error::domain("karcher max_iter must be at least 1"));
        }
        if !(self.step > 0.0 && self.step <= 1.0) {
            return Err(Error::domain(format!(
                "karcher step must lie in (0, 1], got {}",
                self.step
            )));
        }
        Ok(())
    }
}

/// Result of [`karcher_descent`].
#[derive(Clone, Debug, PartialEq)]
pub struct KarcherTrace {
    pub point: DiscPoint,
    pub iterations: usize,
    /// Objective `Σ wᵢ d²(m, pᵢ)` at the start point and after every accepted step.
    pub objective: Vec<f64>,
}

fn resolve_weights(n: usize, weights: Option<&[f64]>) -> Result<Vec<f64>> {
    match weights {
        None => Ok(vec![1.0 / n as f64; n]),
        Some(w) => {
            if w.len() != n {
                return Err(Error::domain(format!("{} weights given for {n} points", w.len())));
            }
            if w.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
                return Err(Error::domain("weights must be finite and nonnegative"));
            }
            let total: f64 = w.iter().sum();
            if (total - 1.0).abs() > 1e-10 {
                return Err(Error::domain(format!("weights must sum to 1, got {total}")));
            }
            Ok(w.to_vec())
        }
    }
}

fn karcher_objective(m: DiscPoint, points: &[DiscPoint], weights: &[f64]) -> f64 {
    points
        .iter()
        .zip(weights)
        .map(|(p, w)| {
            let d = hyp_distance(m, *p);
            w * d * d
        })
        .sum()
}

fn karcher_gradient(m: DiscPoint, points: &[DiscPoint], weights: &[f64]) -> Tangent {
    let mut g = Tangent::ZERO;
    for (p, w) in points.iter().zip(weights) {
        g += hyp_log(m, *p).scale(*w);
    }
    g
}

/// Euclidean weighted mean pulled radially to modulus at most 0.999.
fn euclidean_start(points: &[DiscPoint], weights: &[f64]) -> DiscPoint {
    let mean: Complex64 = points.iter().zip(weights).map(|(p, w)| p.to_complex() * *w).sum();
    let m = mean.norm();
    DiscPoint::saturating(if m > 0.999 { mean * (0.999 / m) } else { mean })
}

/// Riemannian gradient descent on `J(m) = Σ wᵢ d²(m, pᵢ)`, started from the
/// clamped Euclidean mean.
///
/// Each step is `m ← exp_m(step · Σ wᵢ log_m(pᵢ))`. A step that raises `J` is
/// rejected and the step size halved. When `J` no longer resolves the change
/// (difference within a few ulps), a step is kept if it lowers the gradient
/// norm, so `J` along the accepted iterates is non-increasing up to rounding.
pub fn karcher_descent(points: &[DiscPoint], weights: Option<&[f64]>, cfg: &KarcherConfig) -> Result<KarcherTrace> {
    cfg.validate()?;
    if points.is_empty() {
        return Err(Error::domain("karcher mean of an empty point set"));
    }
    let weights = resolve_weights(points.len(), weights)?;

    let mut m = euclidean_start(points, &weights);
    let mut value = karcher_objective(m, points, &weights);
    let mut grad = karcher_gradient(m, points, &weights);
    let mut step = cfg.step;
    let mut objective = vec![value];

    for iteration in 0..cfg.max_iter {
        if grad.norm() < cfg.tol {
            return Ok(KarcherTrace {
                point: m,
                iterations: iteration,
                objective,
            });
        }
        let candidate = hyp_exp(m, grad.scale(step));
        let cand_value = karcher_objective(candidate, points, &weights);
        let cand_grad = karcher_gradient(candidate, points, &weights);
        let unresolved = (cand_value - value).abs() <= 8.0 * f64::EPSILON * value;
        if cand_value <= value || (unresolved && cand_grad.norm() < grad.norm()) {
            m = candidate;
            value = cand_value;
            grad = cand_grad;
            objective.push(value);
        } else {
            step *= 0.5;
        }
    }
    if grad.norm() < cfg.tol {
        return Ok(KarcherTrace {
            point: m,
            iterations: cfg.max_iter,
            objective,
        });
    }
    Err(Error::NonConvergence {
        best: m,
        iterations: cfg.max_iter,
    })
}

/// Weighted Karcher (Riemannian) mean; uniform weights when `weights` is `None`.
pub fn karcher_mean(points: &[DiscPoint], weights: Option<&[f64]>, cfg: &KarcherConfig) -> Result<DiscPoint> {
    karcher_descent(points, weights, cfg).map(|t| t.point)
}

/// Outcome of [`fit_mle`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FitResult {
    pub alpha_hat: f64,
    pub a_hat: DiscPoint,
    pub log_likelihood: f64,
    pub iterations: usize,
    pub converged: bool,
}

const MAX_OUTER: usize = 200;
const MAX_INNER: usize = 100;
const ALPHA_FLOOR: f64 = 1.0 + 1e-9;

/// `Σᵢ −ln(1 − |g_a(zᵢ)|²)`, the part of the log-likelihood that depends on `a`.
fn spread(samples: &[DiscPoint], a: DiscPoint) -> f64 {
    let ac = a.to_complex();
    let la = (-a.norm_sqr()).ln_1p();
    samples
        .iter()
        .map(|z| {
            let zc = z.to_complex();
            let lin = (Complex64::new(1.0, 0.0) - ac.conj() * zc).norm();
            2.0 * lin.ln() - la - (-zc.norm_sqr()).ln_1p()
        })
        .sum()
}

/// `Σᵢ ln p(zᵢ; α, a)`.
pub fn log_likelihood(samples: &[DiscPoint], alpha: f64, a: DiscPoint) -> f64 {
    let n = samples.len() as f64;
    n * ((alpha - 1.0).ln() - PI.ln()) - alpha * spread(samples, a)
}

/// Riemannian gradient of [`log_likelihood`] in `a`, in the orthonormal frame.
///
/// Each term is `−α ∇ 2 ln cosh d(a, zᵢ) = 2α (tanh dᵢ / dᵢ) log_a(zᵢ)`.
pub fn log_likelihood_grad(samples: &[DiscPoint], alpha: f64, a: DiscPoint) -> Tangent {
    let g = MoebiusTransform::involution(a);
    let mut total = Tangent::ZERO;
    for z in samples {
        let u = g.apply_complex(z.to_complex()).norm();
        let d = hyp_distance(a, *z);
        let factor = if d > 0.0 { u / d } else { 1.0 };
        total += hyp_log(a, *z).scale(2.0 * alpha * factor);
    }
    total
}

/// Stationary point of the log-likelihood in `α` for fixed `a`:
/// `α = 1 + n / Σᵢ ln(1 / (1 − |g_a(zᵢ)|²))`.
pub fn alpha_given_location(samples: &[DiscPoint], a: DiscPoint) -> Result<f64> {
    let s = spread(samples, a);
    let alpha = 1.0 + samples.len() as f64 / s;
    if !(s > 0.0 && alpha.is_finite()) {
        return Err(Error::Degenerate(
            "samples coincide with the location; the concentration estimate diverges".into(),
        ));
    }
    Ok(alpha.max(ALPHA_FLOOR))
}

/// Minimizes `spread(·)` over `a` by Riemannian gradient steps with an
/// adaptive step size. The minimizer does not depend on `α`.
fn improve_location(samples: &[DiscPoint], mut a: DiscPoint, step: &mut f64) -> DiscPoint {
    let n = samples.len() as f64;
    let mut value = spread(samples, a);
    for _ in 0..MAX_INNER {
        // ascent direction of the likelihood at α = 1, scaled by the Hessian at a cluster
        let dir = log_likelihood_grad(samples, 1.0, a).scale(1.0 / (2.0 * n));
        if dir.norm() < 1e-13 {
            break;
        }
        let mut accepted = false;
        while *step > 1e-12 {
            let cand = hyp_exp(a, dir.scale(*step));
            let cv = spread(samples, cand);
            if cv < value {
                a = cand;
                value = cv;
                *step = (*step * 1.5).min(4.0);
                accepted = true;
                break;
            }
            *step *= 0.5;
        }
        if !accepted {
            *step = 1.0;
            break;
        }
    }
    a
}

/// Maximum-likelihood estimate of `(α, a)` by alternating maximization: the
/// closed-form `α` update for the current `a`, then gradient ascent in `a`.
/// With `fixed_alpha` only `a` is fitted.
///
/// Stops when the log-likelihood improves by less than `1e-9` or after 200
/// rounds; `converged` is false in the latter case.
pub fn fit_mle(samples: &[DiscPoint], fixed_alpha: Option<f64>) -> Result<FitResult> {
    if samples.len() < 2 {
        return Err(Error::domain(format!(
            "fitting needs at least 2 samples, got {}",
            samples.len()
        )));
    }
    if let Some(alpha) = fixed_alpha {
        check_alpha(alpha)?;
    }
    let first = samples[0];
    if samples.iter().all(|z| *z == first) {
        return Err(Error::Degenerate(
            "all samples are identical; the concentration estimate diverges".into(),
        ));
    }

    let uniform = vec![1.0 / samples.len() as f64; samples.len()];
    let mut a = euclidean_start(samples, &uniform);
    let estimate_alpha = |a: DiscPoint| match fixed_alpha {
        Some(alpha) => Ok(alpha),
        None => alpha_given_location(samples, a),
    };
    let mut alpha = estimate_alpha(a)?;
    let mut ll = log_likelihood(samples, alpha, a);
    let mut step = 1.0;

    for iteration in 1..=MAX_OUTER {
        a = improve_location(samples, a, &mut step);
        alpha = estimate_alpha(a)?;
        let next = log_likelihood(samples, alpha, a);
        let gain = next - ll;
        ll = next;
        if gain < 1e-9 {
            return Ok(FitResult {
                alpha_hat: alpha,
                a_hat: a,
                log_likelihood: ll,
                iterations: iteration,
                converged: true,
            });
        }
    }
    Ok(FitResult {
        alpha_hat: alpha,
        a_hat: a,
        log_likelihood: ll,
        iterations: MAX_OUTER,
        converged: false,
    })
}
