//! Closed-form-versus-oracle validation suite: the machine-checkable
//! evidence that the analytic energies and the published N(sigma) relation
//! are what the functional actually implies.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::local::LocalModel;
use crate::nonlocal::{ErfcArgVariant, NonlocalModel};
use crate::oracle::{quad_energy, QuadratureSpec};
use crate::params::InteractionKernel;
use crate::types::GaussianAnsatz;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidationConfig {
    /// Tolerance for closed-form energy vs quadrature (relative).
    pub energy_tol: f64,
    /// Tolerance for N(sigma) formula vs stationarity oracle (relative).
    pub n_tol: f64,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        ValidationConfig { energy_tol: 1e-9, n_tol: 1e-6 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationPoint {
    pub check: String,
    pub params: String,
    pub closed_form: f64,
    pub oracle: f64,
    pub rel_error: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub config: ValidationConfig,
    pub points: Vec<ValidationPoint>,
    /// Which reading of the published erfc argument matches the oracle.
    pub resolved_erfc_variant: String,
    pub passed: usize,
    pub failed: usize,
    pub all_pass: bool,
}

fn rel_error(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn push(points: &mut Vec<ValidationPoint>, check: &str, params: String, cf: f64, or: f64, tol: f64) {
    let rel = rel_error(cf, or);
    points.push(ValidationPoint {
        check: check.to_string(),
        params,
        closed_form: cf,
        oracle: or,
        rel_error: rel,
        tol,
        pass: rel <= tol,
    });
}

/// Run the full comparison suite.
pub fn run_validation(config: &ValidationConfig) -> Result<ValidationReport> {
    let mut points = Vec::new();
    let spec = QuadratureSpec::default();

    // 1. Local closed-form energy vs adaptive quadrature, 20x10 grid
    //    sigma in [0.3, 3], bN in [-5, 50].
    for i in 0..20 {
        let sigma = 0.3 + (3.0 - 0.3) * i as f64 / 19.0;
        for j in 0..10 {
            let bn = -5.0 + 55.0 * j as f64 / 9.0;
            let model = LocalModel { b: bn, n: 1.0 };
            let cf = model.energy(&GaussianAnsatz::new(sigma)?).total;
            let or = quad_energy(&InteractionKernel::Contact { b: bn }, 1.0, sigma, &spec)?.total;
            push(
                &mut points,
                "local energy vs quadrature",
                format!("sigma={sigma:.4}, bN={bn:.4}"),
                cf,
                or,
                config.energy_tol,
            );
        }
    }

    // 2. Non-local closed-form energy vs 2-D quadrature on witness params.
    let nl_params = [
        (0.0, 1.0, 1.0, 2.0),
        (-0.5, 1.0, 2.0, 5.0),
        (1.0, 2.0, 0.5, 3.0),
        (-0.01, 2.0, 8.0, 20.0),
    ];
    for &(b, a, gamma, n) in &nl_params {
        for &sigma in &[0.4, 0.8, 1.3, 2.0] {
            let model = NonlocalModel { b, a, gamma, n };
            let cf = model.energy(&GaussianAnsatz::new(sigma)?).total;
            let kernel = InteractionKernel::Composite { b, a, gamma };
            let or = quad_energy(&kernel, n, sigma, &spec)?.total;
            push(
                &mut points,
                "nonlocal energy vs quadrature",
                format!("b={b}, a={a}, gamma={gamma}, N={n}, sigma={sigma}"),
                cf,
                or,
                config.energy_tol,
            );
        }
    }

    // 3. Published N(sigma), both erfc-argument readings, vs the
    //    stationarity oracle across the validation grid.
    let variants = [
        (ErfcArgVariant::OverSqrt2, "erfc(sigma*Gamma/sqrt(2))"),
        (ErfcArgVariant::TimesSqrt2, "erfc(sigma*Gamma*sqrt(2))"),
    ];
    let mut variant_ok = [true, true];
    let grids = [(-0.5, 1.0, 2.0), (-0.01, 2.0, 8.0), (0.5, 1.5, 1.0)];
    for (vi, &(variant, vname)) in variants.iter().enumerate() {
        for &(b, a, gamma) in &grids {
            for i in 0..14 {
                let sigma = 0.3 + (3.0 - 0.3) * i as f64 / 13.0;
                let oracle = match NonlocalModel::n_of_sigma_oracle(b, a, gamma, sigma) {
                    Ok(v) => v,
                    Err(_) => continue,
                };
                let published = match NonlocalModel::n_of_sigma_paper(b, a, gamma, sigma, variant) {
                    Ok(v) => v,
                    Err(_) => continue,
                };
                if !(oracle.is_finite() && oracle > 0.0) {
                    continue; // comparison defined where both finite and positive
                }
                let rel = rel_error(published, oracle);
                if rel > config.n_tol {
                    variant_ok[vi] = false;
                }
                // only the oracle-selected variant contributes pass/fail rows
                if variant == ErfcArgVariant::OverSqrt2 {
                    push(
                        &mut points,
                        "N(sigma) formula vs stationarity oracle",
                        format!("{vname}; b={b}, a={a}, gamma={gamma}, sigma={sigma:.4}"),
                        published,
                        oracle,
                        config.n_tol,
                    );
                }
            }
        }
    }
    let resolved = match variant_ok {
        [true, false] => variants[0].1,
        [false, true] => variants[1].1,
        [true, true] => "both variants match (degenerate parameter grid)",
        [false, false] => "neither variant matches the oracle",
    };

    let passed = points.iter().filter(|p| p.pass).count();
    let failed = points.len() - passed;
    Ok(ValidationReport {
        config: *config,
        resolved_erfc_variant: resolved.to_string(),
        passed,
        failed,
        all_pass: failed == 0 && resolved == variants[0].1,
        points,
    })
}
