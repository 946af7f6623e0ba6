//! Variational and grid-based stability analysis of a harmonically trapped
//! Bose-Einstein condensate.
//!
//! The library evaluates the Gross-Pitaevskii energy per particle on a
//! normalized Gaussian trial wave function of width `sigma`, for a contact
//! interaction and for a composite contact + screened (Yukawa-type)
//! attraction.  It locates stationary points of `epsilon(sigma)`, classifies
//! them as stable, metastable or unstable branches, computes the collapse
//! threshold for attractive coupling, and cross-checks every closed form
//! against an independent quadrature oracle and a radial imaginary-time
//! grid solver.
//!
//! All internal computation uses oscillator units (`hbar = m = omega = 1`);
//! SI inputs are reduced at the API boundary via [`params::to_dimensionless`].

pub mod error;
pub mod gpe;
pub mod local;
pub mod nonlocal;
pub mod oracle;
pub mod params;
pub mod solver;
pub mod specfun;
pub mod types;
pub mod validate;

pub use error::{Error, Result};
pub use local::LocalModel;
pub use nonlocal::NonlocalModel;
pub use params::{DimensionlessScale, InteractionKernel, TrapGasParams};
pub use types::{
    BranchCurve, CriticalPoint, EnergyBreakdown, GaussianAnsatz, PointKind, Stability,
    StationaryPoint,
};
