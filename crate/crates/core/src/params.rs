//! Physical parameters of the trap + gas, interaction kernels, and the
//! reduction to oscillator units.
//!
//! Everything downstream of [`to_dimensionless`] runs with
//! `hbar = m = omega = 1`; lengths in units of the oscillator length
//! `a_ho = sqrt(hbar / (m omega))` and energies in `hbar omega`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical constants of the trap and gas.  Fields may be SI or already
/// dimensionless; [`to_dimensionless`] normalizes either way.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrapGasParams {
    pub mass: f64,
    /// Angular trap frequency omega.
    pub trap_frequency: f64,
    pub hbar: f64,
    /// s-wave scattering length; negative for effectively attractive
    /// species such as 7Li.
    pub scattering_length: f64,
}

impl TrapGasParams {
    pub fn new(mass: f64, trap_frequency: f64, hbar: f64, scattering_length: f64) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::domain(format!("mass must be > 0, got {mass}")));
        }
        if !(trap_frequency > 0.0 && trap_frequency.is_finite()) {
            return Err(Error::domain(format!(
                "trap_frequency must be > 0, got {trap_frequency}"
            )));
        }
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::domain(format!("hbar must be > 0, got {hbar}")));
        }
        if !scattering_length.is_finite() {
            return Err(Error::domain("scattering_length must be finite"));
        }
        Ok(TrapGasParams {
            mass,
            trap_frequency,
            hbar,
            scattering_length,
        })
    }

    /// Oscillator-unit parameters with a given (dimensionless) scattering
    /// length.
    pub fn oscillator(scattering_length: f64) -> Result<Self> {
        TrapGasParams::new(1.0, 1.0, 1.0, scattering_length)
    }

    /// Contact strength `B = 4 pi hbar^2 a_s / m` (same sign as a_s).
    pub fn contact_strength(&self) -> f64 {
        4.0 * std::f64::consts::PI * self.hbar * self.hbar * self.scattering_length / self.mass
    }
}

/// Two-body interaction kernel.  The composite form is
/// `V(s) = B delta^3(s) - A exp(-Gamma s)/s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum InteractionKernel {
    Contact {
        #[serde(rename = "B")]
        b: f64,
    },
    Screened {
        #[serde(rename = "A")]
        a: f64,
        #[serde(rename = "Gamma")]
        gamma: f64,
    },
    Composite {
        #[serde(rename = "B")]
        b: f64,
        #[serde(rename = "A")]
        a: f64,
        #[serde(rename = "Gamma")]
        gamma: f64,
    },
}

impl InteractionKernel {
    pub fn validate(&self) -> Result<()> {
        let (a, gamma) = match *self {
            InteractionKernel::Contact { b } => {
                if !b.is_finite() {
                    return Err(Error::domain("contact strength B must be finite"));
                }
                return Ok(());
            }
            InteractionKernel::Screened { a, gamma } => (a, gamma),
            InteractionKernel::Composite { b, a, gamma } => {
                if !b.is_finite() {
                    return Err(Error::domain("contact strength B must be finite"));
                }
                (a, gamma)
            }
        };
        if !(a >= 0.0 && a.is_finite()) {
            return Err(Error::domain(format!("screened amplitude A must be >= 0, got {a}")));
        }
        if !(gamma >= 0.0 && gamma.is_finite()) {
            return Err(Error::domain(format!(
                "inverse screening length Gamma must be >= 0, got {gamma}"
            )));
        }
        Ok(())
    }

    /// Coupling triple (b, a, gamma) with absent pieces as zero.
    pub fn couplings(&self) -> (f64, f64, f64) {
        match *self {
            InteractionKernel::Contact { b } => (b, 0.0, 0.0),
            InteractionKernel::Screened { a, gamma } => (0.0, a, gamma),
            InteractionKernel::Composite { b, a, gamma } => (b, a, gamma),
        }
    }
}

/// Conversion factors between the input unit system and oscillator units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionlessScale {
    /// a_ho = sqrt(hbar / (m omega))
    pub length_unit: f64,
    /// hbar * omega
    pub energy_unit: f64,
    /// hbar * omega * a_ho^3 (natural unit of the contact strength B)
    pub contact_unit: f64,
}

impl DimensionlessScale {
    pub fn of(params: &TrapGasParams) -> DimensionlessScale {
        let a_ho = (params.hbar / (params.mass * params.trap_frequency)).sqrt();
        let e = params.hbar * params.trap_frequency;
        DimensionlessScale {
            length_unit: a_ho,
            energy_unit: e,
            contact_unit: e * a_ho * a_ho * a_ho,
        }
    }
}

/// Reduce a kernel to oscillator units:
/// `b -> B/(hbar omega a_ho^3)`, `a -> A/(hbar omega a_ho)`,
/// `gamma -> Gamma * a_ho`.
pub fn to_dimensionless(
    params: &TrapGasParams,
    kernel: &InteractionKernel,
) -> Result<(DimensionlessScale, InteractionKernel)> {
    kernel.validate()?;
    let scale = DimensionlessScale::of(params);
    let reduce = |k: &InteractionKernel| match *k {
        InteractionKernel::Contact { b } => InteractionKernel::Contact {
            b: b / scale.contact_unit,
        },
        InteractionKernel::Screened { a, gamma } => InteractionKernel::Screened {
            a: a / (scale.energy_unit * scale.length_unit),
            gamma: gamma * scale.length_unit,
        },
        InteractionKernel::Composite { b, a, gamma } => InteractionKernel::Composite {
            b: b / scale.contact_unit,
            a: a / (scale.energy_unit * scale.length_unit),
            gamma: gamma * scale.length_unit,
        },
    };
    Ok((scale, reduce(kernel)))
}

/// Inverse of [`to_dimensionless`]: restore a reduced kernel to the unit
/// system described by `scale`.
pub fn from_dimensionless(scale: &DimensionlessScale, kernel: &InteractionKernel) -> InteractionKernel {
    match *kernel {
        InteractionKernel::Contact { b } => InteractionKernel::Contact {
            b: b * scale.contact_unit,
        },
        InteractionKernel::Screened { a, gamma } => InteractionKernel::Screened {
            a: a * scale.energy_unit * scale.length_unit,
            gamma: gamma / scale.length_unit,
        },
        InteractionKernel::Composite { b, a, gamma } => InteractionKernel::Composite {
            b: b * scale.contact_unit,
            a: a * scale.energy_unit * scale.length_unit,
            gamma: gamma / scale.length_unit,
        },
    }
}
