//! Parameter resolution: JSON config file, flag overrides, unit reduction.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use trapbec_core::params::to_dimensionless;
use trapbec_core::{Error, InteractionKernel, LocalModel, NonlocalModel, Result, TrapGasParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Local,
    Nonlocal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    Si,
    Oscillator,
}

/// Shared model/parameter flags.  Flags override config-file values; the
/// merged result is echoed into every output header.
#[derive(Debug, Args, Clone)]
pub struct ModelArgs {
    /// Interaction model: contact only, or contact + screened attraction.
    #[arg(long, value_enum, default_value_t = ModelKind::Local)]
    pub model: ModelKind,

    /// Contact coupling B (interpreted per --units).
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,

    /// s-wave scattering length a_s; sets B = 4 pi hbar^2 a_s / m.
    #[arg(long = "a-s", allow_hyphen_values = true, conflicts_with = "b")]
    pub a_s: Option<f64>,

    /// Shortcut for the product B*N: sets B to this value and N to 1.
    #[arg(long = "bN", allow_hyphen_values = true, conflicts_with_all = ["b", "a_s", "n"])]
    pub b_n: Option<f64>,

    /// Screened amplitude A (non-local model).
    #[arg(long = "A")]
    pub a: Option<f64>,

    /// Inverse screening length Gamma (non-local model).
    #[arg(long = "Gamma")]
    pub gamma: Option<f64>,

    /// Boson number N.
    #[arg(long = "N")]
    pub n: Option<f64>,

    /// JSON parameter file: {mass, omega, hbar, a_s, kernel:{type,B,A,Gamma}, units}.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Unit system of the inputs; outputs are always in oscillator units.
    #[arg(long, value_enum)]
    pub units: Option<Units>,

    /// RNG seed for stochastic subroutines (echoed for reproducibility).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    #[serde(default = "one")]
    mass: f64,
    #[serde(default = "one")]
    omega: f64,
    #[serde(default = "one")]
    hbar: f64,
    #[serde(default)]
    a_s: f64,
    kernel: Option<InteractionKernel>,
    units: Option<Units>,
}

fn one() -> f64 {
    1.0
}

/// Fully resolved parameters in oscillator units.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub kind: ModelKind,
    pub b: f64,
    pub a: f64,
    pub gamma: f64,
    pub n: f64,
    pub units: Units,
    pub seed: u64,
}

impl Resolved {
    pub fn local(&self) -> Result<LocalModel> {
        if self.kind != ModelKind::Local {
            return Err(Error::domain("this command requires --model local"));
        }
        LocalModel::new(self.b, self.n)
    }

    pub fn nonlocal(&self) -> Result<NonlocalModel> {
        NonlocalModel::new(self.b, self.a, self.gamma, self.n)
    }

    /// Effective-config entries for output headers.
    pub fn echo(&self) -> BTreeMap<String, Value> {
        let mut m = BTreeMap::new();
        m.insert(
            "model".into(),
            json!(match self.kind {
                ModelKind::Local => "local",
                ModelKind::Nonlocal => "nonlocal",
            }),
        );
        m.insert("B".into(), json!(self.b));
        if self.kind == ModelKind::Nonlocal {
            m.insert("A".into(), json!(self.a));
            m.insert("Gamma".into(), json!(self.gamma));
        }
        m.insert("N".into(), json!(self.n));
        m.insert(
            "input_units".into(),
            json!(match self.units {
                Units::Si => "si",
                Units::Oscillator => "oscillator",
            }),
        );
        m.insert("units".into(), json!("oscillator"));
        m.insert("seed".into(), json!(self.seed));
        m
    }
}

pub fn resolve(args: &ModelArgs) -> Result<Resolved> {
    let file: Option<FileConfig> = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::domain(format!("--config {}: {e}", path.display())))?;
            Some(
                serde_json::from_str(&text)
                    .map_err(|e| Error::domain(format!("--config {}: {e}", path.display())))?,
            )
        }
        None => None,
    };

    let mass = file.as_ref().map_or(1.0, |f| f.mass);
    let omega = file.as_ref().map_or(1.0, |f| f.omega);
    let hbar = file.as_ref().map_or(1.0, |f| f.hbar);
    let units = args
        .units
        .or(file.as_ref().and_then(|f| f.units))
        .unwrap_or(Units::Oscillator);

    let a_s = args.a_s.or(file.as_ref().map(|f| f.a_s));
    let params = TrapGasParams::new(mass, omega, hbar, a_s.unwrap_or(0.0))?;
    // the kernel block wins over a_s for the contact part; without it the
    // contact strength derives from the scattering length
    let (mut b, mut a, mut gamma) = match file.as_ref().and_then(|f| f.kernel.as_ref()) {
        Some(k) => k.couplings(),
        None => (params.contact_strength(), 0.0, 0.0),
    };

    // flag overrides, still in the input unit system
    if let Some(a_s) = args.a_s {
        b = TrapGasParams::new(mass, omega, hbar, a_s)?.contact_strength();
    }
    if let Some(bv) = args.b {
        b = bv;
    }
    if let Some(av) = args.a {
        a = av;
    }
    if let Some(g) = args.gamma {
        gamma = g;
    }
    let mut n = args.n.unwrap_or(0.0);
    if let Some(bn) = args.b_n {
        b = bn;
        n = 1.0;
    }
    if !(n >= 0.0 && n.is_finite()) {
        return Err(Error::domain(format!("--N must be >= 0, got {n}")));
    }

    let kernel = InteractionKernel::Composite { b, a, gamma };
    kernel.validate()?;
    let reduced = match units {
        Units::Oscillator => kernel,
        Units::Si => to_dimensionless(&params, &kernel)?.1,
    };
    let (b, a, gamma) = reduced.couplings();

    if args.kind_is_local() && (a != 0.0 || args.gamma.is_some()) {
        return Err(Error::domain(
            "--model local takes no screened couplings (drop --A/--Gamma or use --model nonlocal)",
        ));
    }

    Ok(Resolved {
        kind: args.model,
        b,
        a,
        gamma,
        n,
        units,
        seed: args.seed,
    })
}

impl ModelArgs {
    fn kind_is_local(&self) -> bool {
        self.model == ModelKind::Local
    }
}
