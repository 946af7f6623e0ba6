//! Closed-form Gaussian-variational energetics for the contact interaction.
//!
//! With `hbar = m = omega = 1` the energy per particle on the Gaussian of
//! width sigma is
//!
//! ```text
//! epsilon(sigma) = (3/4) sigma^-2 + (3/4) sigma^2
//!                + b N / (2 (2 pi)^{3/2} sigma^3)
//! ```
//!
//! Stationarity gives `N(sigma) = ((2 pi)^{3/2} / b)(sigma^5 - sigma)`;
//! for attractive coupling (b < 0) the branch terminates at
//! `sigma_min = 5^{-1/4}` with `N_max = 4 * 5^{-5/4} (2 pi)^{3/2} / |b|`.

use crate::error::{Error, Result};
use crate::types::{CriticalPoint, EnergyBreakdown, GaussianAnsatz};

/// (2 pi)^{3/2}
pub(crate) const TWO_PI_3_2: f64 = 15.749_609_945_722_419;

/// Contact-interaction variational model: reduced contact strength `b`
/// and boson number `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalModel {
    pub b: f64,
    pub n: f64,
}

impl LocalModel {
    pub fn new(b: f64, n: f64) -> Result<Self> {
        if !b.is_finite() {
            return Err(Error::domain("contact strength b must be finite"));
        }
        if !(n >= 0.0 && n.is_finite()) {
            return Err(Error::domain(format!("boson number n must be >= 0, got {n}")));
        }
        Ok(LocalModel { b, n })
    }

    pub fn energy(&self, ansatz: &GaussianAnsatz) -> EnergyBreakdown {
        let s = ansatz.sigma();
        let kinetic = 0.75 / (s * s);
        let trap = 0.75 * s * s;
        let interaction = self.b * self.n / (2.0 * TWO_PI_3_2 * s * s * s);
        EnergyBreakdown::new(kinetic, trap, interaction)
    }

    /// Analytic d epsilon / d sigma.
    pub fn denergy_dsigma(&self, ansatz: &GaussianAnsatz) -> f64 {
        let s = ansatz.sigma();
        -1.5 / (s * s * s) + 1.5 * s - 3.0 * self.b * self.n / (2.0 * TWO_PI_3_2 * s.powi(4))
    }

    /// Boson number at which `sigma` is a stationary radius:
    /// `N(sigma) = ((2 pi)^{3/2} / b)(sigma^5 - sigma)`.
    ///
    /// Negative return values mean no stationary point with positive N at
    /// this radius.
    pub fn n_of_sigma(b: f64, sigma: f64) -> Result<f64> {
        if b == 0.0 {
            return Err(Error::domain(
                "N(sigma) is undefined at b = 0: the stationary radius is sigma = 1 for every N",
            ));
        }
        if !(sigma > 0.0) {
            return Err(Error::domain(format!("sigma must be > 0, got {sigma}")));
        }
        Ok(TWO_PI_3_2 / b * (sigma.powi(5) - sigma))
    }

    /// Collapse threshold of the attractive branch (b < 0):
    /// `sigma_min = 5^{-1/4}`, `N_max = 4 * 5^{-5/4} (2 pi)^{3/2} / |b|`.
    pub fn critical_point(b: f64) -> Result<CriticalPoint> {
        if !(b < 0.0) {
            return Err(Error::domain(format!(
                "no collapse threshold for repulsive or zero coupling (b = {b})"
            )));
        }
        let sigma_min = 5f64.powf(-0.25);
        let n_max = 4.0 * 5f64.powf(-1.25) * TWO_PI_3_2 / b.abs();
        Ok(CriticalPoint { sigma_min, n_max })
    }
}
