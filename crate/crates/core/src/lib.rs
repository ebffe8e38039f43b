//! Probability distributions on the Poincaré disc that are invariant, as a
//! family, under the disc automorphism group, together with the wrapped
//! Cauchy family on its boundary circle.
//!
//! The crate covers:
//!
//! * disc geometry: Möbius automorphisms, hyperbolic distance, area density,
//!   exponential and logarithm maps ([`disc`]);
//! * the Gauss hypergeometric series `2F1(α, α; 1; x)` and a circular integral
//!   that evaluates the same quantity independently ([`special`]);
//! * the wrapped Cauchy family `wC(a)` ([`wrapped_cauchy`]);
//! * the conformally natural family `F(α, a)` and finite mixtures of it
//!   ([`conf_natural`]);
//! * Karcher means and maximum-likelihood fitting ([`estimation`]);
//! * a cross-entropy optimizer over the disc that uses `F(α, a)` as its search
//!   distribution ([`cem`]).
//!
//! All randomness flows through [`RngStream`], so every sampler is a pure
//! function of its parameters and the stream state.

pub mod cem;
pub mod conf_natural;
pub mod disc;
pub mod error;
pub mod estimation;
pub mod gof;
pub mod quadrature;
pub mod rng;
pub mod special;
pub mod wrapped_cauchy;

pub use cem::{cem_optimize, cem_optimize_from, CemConfig, CemOptimizer, CemOutcome, TraceEntry};
pub use conf_natural::{ConfNatural, Mixture};
pub use disc::{hyp_distance, hyp_exp, hyp_log, tau_density, CirclePoint, DiscPoint, MoebiusTransform, Tangent};
pub use error::{Error, Result};
pub use estimation::{fit_mle, karcher_mean, FitResult, KarcherConfig};
pub use rng::RngStream;
pub use special::{hyp2f1_aa1, poisson_circle_integral};
pub use wrapped_cauchy::WrappedCauchy;
