//! Shared value types: the Gaussian trial state, per-particle energy
//! breakdowns, and classified stationary points.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Normalized Gaussian trial wave function
/// `Psi(r) = pi^{-3/4} sigma^{-3/2} exp(-r^2 / 2 sigma^2)`,
/// parameterized by its width `sigma` (the condensate mean radius).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianAnsatz {
    sigma: f64,
}

impl GaussianAnsatz {
    pub fn new(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::domain(format!("sigma must be > 0, got {sigma}")));
        }
        Ok(GaussianAnsatz { sigma })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Wave function value at radius r (oscillator units).
    pub fn psi(&self, r: f64) -> f64 {
        let s = self.sigma;
        std::f64::consts::PI.powf(-0.75) * s.powf(-1.5) * (-r * r / (2.0 * s * s)).exp()
    }
}

/// Per-particle energy split into its three physical contributions
/// (hbar*omega units).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyBreakdown {
    pub kinetic: f64,
    pub trap: f64,
    pub interaction: f64,
    pub total: f64,
}

impl EnergyBreakdown {
    pub fn new(kinetic: f64, trap: f64, interaction: f64) -> Self {
        EnergyBreakdown {
            kinetic,
            trap,
            interaction,
            total: kinetic + trap + interaction,
        }
    }

    /// Virial combination `2 E_kin - 2 E_trap + 3 E_int`; vanishes at any
    /// stationary state of the functional in a harmonic trap.
    pub fn virial(&self) -> f64 {
        2.0 * self.kinetic - 2.0 * self.trap + 3.0 * self.interaction
    }
}

/// Curvature classification of a stationary point of epsilon(sigma).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKind {
    Minimum,
    Maximum,
    /// |d^2 epsilon / d sigma^2| below the classification floor (merged
    /// double root, e.g. exactly at N = N_max).
    Degenerate,
}

impl std::fmt::Display for PointKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PointKind::Minimum => "minimum",
            PointKind::Maximum => "maximum",
            PointKind::Degenerate => "degenerate",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    /// Unique global minimum.
    Stable,
    /// Local minimum with a lower-energy configuration elsewhere
    /// (for attractive contact coupling the sigma -> 0 collapse channel
    /// is always below, so every attractive minimum is metastable).
    Metastable,
    Unstable,
}

impl std::fmt::Display for Stability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Stability::Stable => "stable",
            Stability::Metastable => "metastable",
            Stability::Unstable => "unstable",
        };
        f.write_str(s)
    }
}

/// A root of d epsilon / d sigma with its classification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StationaryPoint {
    pub sigma: f64,
    pub energy: EnergyBreakdown,
    pub kind: PointKind,
    pub stability: Stability,
}

/// Collapse threshold of the attractive branch: the minimum stationary
/// radius and the largest boson number that still admits a metastable
/// minimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub sigma_min: f64,
    pub n_max: f64,
}

/// One row of a stationary-branch sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub sigma: f64,
    /// Boson number at which this sigma is stationary; negative values mean
    /// no stationary point with positive N at this radius.
    pub n: f64,
    pub energy: EnergyBreakdown,
    pub kind: PointKind,
}

/// Stationary curve (sigma, N(sigma), epsilon) tabulated over a sigma
/// window, ordered by strictly increasing sigma.  Poles of N(sigma) are
/// recorded as gaps (the row is simply absent).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchCurve {
    pub model: String,
    pub points: Vec<CurvePoint>,
}
