use crate::disc::DiscPoint;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument violates a documented invariant (`|a| < 1`, `α > 1`, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical routine failed to reach its tolerance.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// The input admits no finite estimate, e.g. all samples identical.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A user objective returned NaN.
    #[error("objective returned NaN at z = {} + {}i", .point.re(), .point.im())]
    Evaluation { point: DiscPoint },

    /// An iterative solver ran out of iterations. `best` is the best iterate seen.
    #[error("no convergence after {iterations} iterations (best iterate {} + {}i)", .best.re(), .best.im())]
    NonConvergence { best: DiscPoint, iterations: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }
}
