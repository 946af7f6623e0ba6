use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violates its domain (non-positive mass, sigma <= 0, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A root bracket does not enclose a sign change.
    #[error("bracket error: no sign change of {what} on [{lo}, {hi}]")]
    Bracket { what: &'static str, lo: f64, hi: f64 },

    /// Adaptive quadrature failed to reach the requested tolerance.
    #[error("quadrature did not converge: {0}")]
    QuadratureConvergence(String),

    /// Imaginary-time relaxation ran out of iterations.
    #[error("relaxation did not converge within {iters} iterations (last energy change {last_change:e})")]
    RelaxationConvergence { iters: usize, last_change: f64 },

    /// The condensate shrank below the resolvable grid scale: the attractive
    /// coupling is past the collapse threshold.  Physics, not a bug.
    #[error("collapse detected after {iters} iterations (width estimate {rms_radius:.3e}, grid resolution limit {limit:.3e})")]
    Collapse { rms_radius: f64, limit: f64, iters: usize },

    /// The stationary-number curve N(sigma) has a pole at this sigma (interaction response
    /// changes sign); no finite boson number solves the stationarity there.
    #[error("N(sigma) pole at sigma = {sigma}")]
    Pole { sigma: f64 },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
