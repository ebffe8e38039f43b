//! Cross-entropy minimization over the disc with `F(α, a)` as the search law.
//!
//! Each generation draws a population, keeps the best `⌈elite_frac · population⌉`
//! points, moves the location to their Karcher mean and multiplies `α` by
//! `alpha_growth` (capped at [`ALPHA_CAP`]).
//!
//! The search law is carried as a frame `T` with `T(0) = a`: draws are `T(z)`
//! for `z ~ F(α, 0)`, and a location update from `a` to `a'` composes `T` with
//! the hyperbolic translation from `a` to `a'`. Since every step commutes with
//! isometries, running on `f ∘ h⁻¹` from frame `h ∘ T` reproduces `h` of the
//! original iterates for the same seed. Starting from the frame `g_a` gives the
//! same draws as [`ConfNatural::sample`](crate::ConfNatural::sample).

use crate::conf_natural::{check_alpha, sample_centered};
use crate::disc::{DiscPoint, MoebiusTransform};
use crate::error::{Error, Result};
use crate::estimation::{karcher_mean, KarcherConfig};
use crate::rng::RngStream;

pub const ALPHA_CAP: f64 = 1e6;

/// Karcher settings for the elite update; tight so the iterates are
/// reproducible under isometries to well below `1e-9`.
const ELITE_KARCHER: KarcherConfig = KarcherConfig {
    tol: 1e-13,
    max_iter: 10_000,
    step: 1.0,
};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CemConfig {
    pub population: usize,
    pub elite_frac: f64,
    pub iterations: usize,
    pub alpha0: f64,
    pub alpha_growth: f64,
}

impl Default for CemConfig {
    fn default() -> Self {
        CemConfig {
            population: 200,
            elite_frac: 0.2,
            iterations: 40,
            alpha0: 2.0,
            alpha_growth: 1.15,
        }
    }
}

impl CemConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population < 2 {
            return Err(Error::domain(format!(
                "population must be at least 2, got {}",
                self.population
            )));
        }
        if !(self.elite_frac > 0.0 && self.elite_frac <= 1.0) {
            return Err(Error::domain(format!(
                "elite_frac must lie in (0, 1], got {}",
                self.elite_frac
            )));
        }
        check_alpha(self.alpha0)?;
        if !(self.alpha_growth.is_finite() && self.alpha_growth >= 1.0) {
            return Err(Error::domain(format!(
                "alpha_growth must be >= 1, got {}",
                self.alpha_growth
            )));
        }
        Ok(())
    }

    pub fn elite_count(&self) -> usize {
        ((self.elite_frac * self.population as f64 - 1e-9).ceil() as usize).clamp(1, self.population)
    }
}

/// State after one generation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceEntry {
    pub iteration: usize,
    /// Location after the update.
    pub a: DiscPoint,
    /// Concentration after the update.
    pub alpha: f64,
    /// Best objective value seen so far.
    pub best_value: f64,
}

/// Everything one generation produced.
#[derive(Clone, Debug)]
pub struct Generation {
    pub population: Vec<DiscPoint>,
    pub values: Vec<f64>,
    /// Indices into `population`, best first.
    pub elites: Vec<usize>,
    pub entry: TraceEntry,
}

#[derive(Clone, Debug)]
pub struct CemOptimizer {
    cfg: CemConfig,
    frame: MoebiusTransform,
    mean: DiscPoint,
    alpha: f64,
    best: Option<(DiscPoint, f64)>,
    iteration: usize,
}

impl CemOptimizer {
    pub fn new(cfg: CemConfig, frame: MoebiusTransform) -> Result<Self> {
        cfg.validate()?;
        Ok(CemOptimizer {
            cfg,
            frame,
            mean: frame.apply(DiscPoint::ORIGIN),
            alpha: cfg.alpha0,
            best: None,
            iteration: 0,
        })
    }

    pub fn mean(&self) -> DiscPoint {
        self.mean
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn best(&self) -> Option<(DiscPoint, f64)> {
        self.best
    }

    pub fn step<F: Fn(DiscPoint) -> f64>(&mut self, objective: &F, rng: &mut RngStream) -> Result<Generation> {
        let population: Vec<DiscPoint> = (0..self.cfg.population)
            .map(|_| self.frame.apply(sample_centered(self.alpha, rng)))
            .collect();
        let mut values = Vec::with_capacity(population.len());
        for z in &population {
            let v = objective(*z);
            if v.is_nan() {
                return Err(Error::Evaluation { point: *z });
            }
            values.push(v);
        }

        let mut order: Vec<usize> = (0..population.len()).collect();
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        let elites: Vec<usize> = order[..self.cfg.elite_count()].to_vec();

        let leader = elites[0];
        if self.best.is_none_or(|(_, v)| values[leader] < v) {
            self.best = Some((population[leader], values[leader]));
        }

        let elite_points: Vec<DiscPoint> = elites.iter().map(|&i| population[i]).collect();
        let next = match karcher_mean(&elite_points, None, &ELITE_KARCHER) {
            Ok(m) => m,
            Err(Error::NonConvergence { best, .. }) => best,
            Err(e) => return Err(e),
        };
        self.frame = MoebiusTransform::transvection(self.mean, next).compose(&self.frame);
        self.mean = next;
        self.alpha = (self.alpha * self.cfg.alpha_growth).min(ALPHA_CAP);
        self.iteration += 1;

        let entry = TraceEntry {
            iteration: self.iteration,
            a: self.mean,
            alpha: self.alpha,
            best_value: self.best.map_or(f64::INFINITY, |(_, v)| v),
        };
        Ok(Generation {
            population,
            values,
            elites,
            entry,
        })
    }
}

#[derive(Clone, Debug)]
pub struct CemOutcome {
    pub best_point: DiscPoint,
    pub best_value: f64,
    pub trace: Vec<TraceEntry>,
}

/// Runs `cfg.iterations` generations from the frame `init` (location `init(0)`).
pub fn cem_optimize_from<F: Fn(DiscPoint) -> f64>(
    objective: F,
    cfg: &CemConfig,
    init: MoebiusTransform,
    rng: &mut RngStream,
) -> Result<CemOutcome> {
    let mut opt = CemOptimizer::new(*cfg, init)?;
    let mut trace = Vec::with_capacity(cfg.iterations);
    for _ in 0..cfg.iterations {
        trace.push(opt.step(&objective, rng)?.entry);
    }
    let (best_point, best_value) = opt.best.unwrap_or((opt.mean, objective(opt.mean)));
    Ok(CemOutcome {
        best_point,
        best_value,
        trace,
    })
}

/// Runs from the origin with the identity frame.
pub fn cem_optimize<F: Fn(DiscPoint) -> f64>(objective: F, cfg: &CemConfig, rng: &mut RngStream) -> Result<CemOutcome> {
    cem_optimize_from(objective, cfg, MoebiusTransform::identity(), rng)
}
