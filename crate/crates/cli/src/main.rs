//! `trapbec`: batch front end for the condensate stability analysis.
//!
//! Exit codes: 0 ok, 2 invalid input, 3 collapse, 4 non-convergence,
//! 5 validation mismatch.

mod config;
mod emit;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use config::{resolve, ModelArgs, ModelKind, Resolved};
use emit::{emit, fmt_float, Cell, OutputArgs, Table};
use trapbec_core::gpe::{relax, RadialGrid, RelaxConfig};
use trapbec_core::solver::{critical_scan, find_branches, sweep, DEFAULT_WINDOW};
use trapbec_core::validate::{run_validation, ValidationConfig};
use trapbec_core::{Error, GaussianAnsatz, LocalModel, PointKind, Result};

#[derive(Parser)]
#[command(
    name = "trapbec",
    version,
    about = "Stability analysis of a harmonically trapped Bose-Einstein condensate"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct RangeArgs {
    /// Lower edge of the sigma window (oscillator lengths).
    #[arg(long = "sigma-min")]
    sigma_min: Option<f64>,

    /// Upper edge of the sigma window.
    #[arg(long = "sigma-max")]
    sigma_max: Option<f64>,

    /// Number of sweep samples.
    #[arg(long)]
    steps: Option<usize>,

    /// Geometric instead of uniform sigma spacing.
    #[arg(long = "log-grid")]
    log_grid: bool,
}

impl RangeArgs {
    fn window(&self, default: (f64, f64)) -> (f64, f64) {
        (
            self.sigma_min.unwrap_or(default.0),
            self.sigma_max.unwrap_or(default.1),
        )
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the energy breakdown at one (sigma, N).
    Energy {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Gaussian width sigma (oscillator lengths).
        #[arg(long, allow_hyphen_values = true)]
        sigma: f64,
    },
    /// Locate and classify all stationary points in a sigma window.
    Branches {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Tabulate the stationary curve N(sigma) with energies.
    Sweep {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Collapse threshold: minimal radius and maximal boson number.
    Critical {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Relax the radial Gross-Pitaevskii equation (contact model only).
    Gpe {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Radial box size (oscillator lengths).
        #[arg(long = "r-max", default_value_t = 10.0)]
        r_max: f64,
        /// Number of radial grid intervals (even, >= 64).
        #[arg(long = "grid-points", default_value_t = 1024)]
        grid_points: usize,
        /// Imaginary-time step; defaults to 0.4*spacing^2.
        #[arg(long)]
        dtau: Option<f64>,
        #[arg(long = "max-iters", default_value_t = 3_000_000)]
        max_iters: usize,
        /// Relative per-check energy-change convergence tolerance.
        #[arg(long = "energy-tol", default_value_t = 1e-12)]
        energy_tol: f64,
        /// Residual-norm convergence tolerance ||(H - mu) u||.
        #[arg(long = "residual-tol", default_value_t = 1e-9)]
        residual_tol: f64,
        /// Width of the initial Gaussian; defaults to the variational
        /// minimum (basin selection for attractive coupling).
        #[arg(long = "init-sigma")]
        init_sigma: Option<f64>,
        /// Write the converged profile as CSV (r, psi, u).
        #[arg(long = "profile-out")]
        profile_out: Option<PathBuf>,
        /// Write the convergence history as CSV (iter, energy, residual).
        #[arg(long = "history-out")]
        history_out: Option<PathBuf>,
    },
    /// Run the closed-form-vs-oracle validation suite (JSON report).
    Validate {
        #[command(flatten)]
        output: OutputArgs,
        /// Relative tolerance for closed-form energy vs quadrature.
        #[arg(long = "energy-tol", default_value_t = 1e-9)]
        energy_tol: f64,
        /// Relative tolerance for N(sigma) formula vs stationarity oracle.
        #[arg(long = "n-tol", default_value_t = 1e-6)]
        n_tol: f64,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    });
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) => 2,
        Error::Collapse { .. } => 3,
        Error::RelaxationConvergence { .. }
        | Error::QuadratureConvergence(_)
        | Error::Bracket { .. }
        | Error::Pole { .. } => 4,
    }
}

fn energy_cells(sigma: f64, n: f64, e: &trapbec_core::EnergyBreakdown) -> Vec<Cell> {
    vec![
        Cell::F(sigma),
        Cell::F(n),
        Cell::F(e.kinetic),
        Cell::F(e.trap),
        Cell::F(e.interaction),
        Cell::F(e.total),
    ]
}

fn with_model<T>(
    r: &Resolved,
    f_local: impl FnOnce(LocalModel) -> Result<T>,
    f_nonlocal: impl FnOnce(trapbec_core::NonlocalModel) -> Result<T>,
) -> Result<T> {
    match r.kind {
        ModelKind::Local => f_local(r.local()?),
        ModelKind::Nonlocal => f_nonlocal(r.nonlocal()?),
    }
}

fn run(cmd: Cmd) -> Result<i32> {
    match cmd {
        Cmd::Energy { model, output, sigma } => {
            let r = resolve(&model)?;
            let ansatz = GaussianAnsatz::new(sigma)
                .map_err(|_| Error::domain(format!("--sigma must be > 0, got {sigma}")))?;
            let e = with_model(&r, |m| Ok(m.energy(&ansatz)), |m| Ok(m.energy(&ansatz)))?;
            let mut table = Table::new(
                "energy",
                vec!["sigma", "n", "e_kin", "e_trap", "e_int", "e_total", "virial"],
            );
            let mut row = energy_cells(sigma, r.n, &e);
            row.push(Cell::F(e.virial()));
            table.push(row);
            let mut cfg = r.echo();
            cfg.insert("sigma".into(), json!(sigma));
            emit(&table, &cfg, &output)?;
            Ok(0)
        }

        Cmd::Branches { model, output, range } => {
            let r = resolve(&model)?;
            let window = range.window(DEFAULT_WINDOW);
            let pts = with_model(
                &r,
                |m| find_branches(&m, window),
                |m| find_branches(&m, window),
            )?;
            let mut table = Table::new(
                "branches",
                vec![
                    "sigma", "n", "e_kin", "e_trap", "e_int", "e_total", "kind", "stability",
                ],
            );
            for p in &pts {
                let mut row = energy_cells(p.sigma, r.n, &p.energy);
                row.push(Cell::S(p.kind.to_string()));
                row.push(Cell::S(p.stability.to_string()));
                table.push(row);
            }
            table.notes.push(format!("{} stationary point(s) in [{}, {}]", pts.len(), window.0, window.1));
            let mut cfg = r.echo();
            cfg.insert("sigma_min".into(), json!(window.0));
            cfg.insert("sigma_max".into(), json!(window.1));
            emit(&table, &cfg, &output)?;
            Ok(0)
        }

        Cmd::Sweep { model, output, range } => {
            let r = resolve(&model)?;
            let window = range.window((0.3, 3.0));
            let steps = range.steps.unwrap_or(100);
            let curve = with_model(
                &r,
                |m| sweep(&m, window, steps, range.log_grid),
                |m| sweep(&m, window, steps, range.log_grid),
            )?;
            let mut table = Table::new(
                "sweep",
                vec!["sigma", "n", "e_total", "e_kin", "e_trap", "e_int", "kind"],
            );
            for p in &curve.points {
                table.push(vec![
                    Cell::F(p.sigma),
                    Cell::F(p.n),
                    Cell::F(p.energy.total),
                    Cell::F(p.energy.kinetic),
                    Cell::F(p.energy.trap),
                    Cell::F(p.energy.interaction),
                    Cell::S(p.kind.to_string()),
                ]);
            }
            let mut cfg = r.echo();
            cfg.insert("sigma_min".into(), json!(window.0));
            cfg.insert("sigma_max".into(), json!(window.1));
            cfg.insert("steps".into(), json!(steps));
            cfg.insert("log_grid".into(), json!(range.log_grid));
            emit(&table, &cfg, &output)?;
            Ok(0)
        }

        Cmd::Critical { model, output, range } => {
            let r = resolve(&model)?;
            let window = range.window((0.05, 5.0));
            let cp = with_model(
                &r,
                |m| {
                    // closed form exists for the contact model; the scan is
                    // the generic path
                    let _ = critical_scan(&m, window)?;
                    LocalModel::critical_point(m.b)
                },
                |m| critical_scan(&m, window),
            )?;
            let mut table = Table::new("critical", vec!["sigma_min", "n_max", "n_max_abs_a_s"]);
            // N_max |a_s| / a_ho with B = 4 pi a_s in oscillator units
            let n_max_as = cp.n_max * r.b.abs() / (4.0 * std::f64::consts::PI);
            table.push(vec![Cell::F(cp.sigma_min), Cell::F(cp.n_max), Cell::F(n_max_as)]);
            let mut cfg = r.echo();
            cfg.insert("sigma_min_window".into(), json!(window.0));
            cfg.insert("sigma_max_window".into(), json!(window.1));
            emit(&table, &cfg, &output)?;
            Ok(0)
        }

        Cmd::Gpe {
            model,
            output,
            r_max,
            grid_points,
            dtau,
            max_iters,
            energy_tol,
            residual_tol,
            init_sigma,
            profile_out,
            history_out,
        } => {
            let r = resolve(&model)?;
            let m = r.local()?;
            let grid = RadialGrid::new(r_max, grid_points)?;
            // variational reference: lowest minimum in the default window
            let minima: Vec<_> = find_branches(&m, DEFAULT_WINDOW)?
                .into_iter()
                .filter(|p| p.kind == PointKind::Minimum)
                .collect();
            let reference = minima
                .iter()
                .min_by(|x, y| x.energy.total.total_cmp(&y.energy.total))
                .cloned();
            let init_sigma = init_sigma
                .or(reference.as_ref().map(|p| p.sigma))
                .unwrap_or(1.0);
            let cfg_relax = RelaxConfig {
                dtau,
                max_iters,
                energy_tol,
                residual_tol,
                init_sigma,
                ..RelaxConfig::default()
            };
            let bn = m.b * m.n;
            let state = relax(bn, &grid, &cfg_relax)?;

            if let Some(path) = &profile_out {
                let dr = grid.spacing();
                let psi = state.psi();
                let mut text = String::from("r,psi,u\n");
                for (i, (p, u)) in psi.iter().zip(&state.u).enumerate() {
                    text.push_str(&format!(
                        "{},{},{}\n",
                        fmt_float(i as f64 * dr),
                        fmt_float(*p),
                        fmt_float(*u)
                    ));
                }
                std::fs::write(path, text)
                    .map_err(|e| Error::domain(format!("--profile-out {}: {e}", path.display())))?;
            }
            if let Some(path) = &history_out {
                let mut text = String::from("iter,energy,residual\n");
                for (it, e, res) in &state.history {
                    text.push_str(&format!("{it},{},{}\n", fmt_float(*e), fmt_float(*res)));
                }
                std::fs::write(path, text)
                    .map_err(|e| Error::domain(format!("--history-out {}: {e}", path.display())))?;
            }

            let mut table = Table::new(
                "gpe",
                vec![
                    "bn",
                    "e_kin",
                    "e_trap",
                    "e_int",
                    "e_total",
                    "mu",
                    "virial_residual",
                    "iterations",
                    "init_sigma",
                    "e_gaussian_min",
                    "bound",
                ],
            );
            let (e_var, bound) = match &reference {
                Some(p) => {
                    let ok = state.energy.total <= p.energy.total + 1e-10;
                    (Cell::F(p.energy.total), Cell::S(if ok { "pass" } else { "fail" }.into()))
                }
                None => (Cell::S(String::new()), Cell::S("n/a".into())),
            };
            table.push(vec![
                Cell::F(bn),
                Cell::F(state.energy.kinetic),
                Cell::F(state.energy.trap),
                Cell::F(state.energy.interaction),
                Cell::F(state.energy.total),
                Cell::F(state.mu),
                Cell::F(state.virial_residual()),
                Cell::I(state.iterations as u64),
                Cell::F(init_sigma),
                e_var,
                bound,
            ]);
            match &reference {
                Some(p) => table.notes.push(format!(
                    "variational bound: {} (grid {} vs gaussian minimum {})",
                    if state.energy.total <= p.energy.total + 1e-10 { "PASS" } else { "FAIL" },
                    fmt_float(state.energy.total),
                    fmt_float(p.energy.total)
                )),
                None => table
                    .notes
                    .push("variational bound: n/a (no variational minimum in the window)".into()),
            }
            let mut cfg = r.echo();
            cfg.insert("r_max".into(), json!(r_max));
            cfg.insert("grid_points".into(), json!(grid_points));
            cfg.insert("energy_tol".into(), json!(energy_tol));
            cfg.insert("residual_tol".into(), json!(residual_tol));
            cfg.insert("init_sigma".into(), json!(init_sigma));
            emit(&table, &cfg, &output)?;
            Ok(0)
        }

        Cmd::Validate { output, energy_tol, n_tol } => {
            let vcfg = ValidationConfig { energy_tol, n_tol };
            let report = run_validation(&vcfg)?;
            let mut table = Table::new(
                "validate",
                vec![
                    "check",
                    "params",
                    "closed_form",
                    "oracle",
                    "rel_error",
                    "tol",
                    "pass",
                ],
            );
            for p in &report.points {
                table.push(vec![
                    Cell::S(p.check.clone()),
                    Cell::S(p.params.clone()),
                    Cell::F(p.closed_form),
                    Cell::F(p.oracle),
                    Cell::F(p.rel_error),
                    Cell::F(p.tol),
                    Cell::B(p.pass),
                ]);
            }
            table.notes.push(format!(
                "resolved erfc-argument variant: {}",
                report.resolved_erfc_variant
            ));
            table
                .notes
                .push(format!("{} passed, {} failed", report.passed, report.failed));
            let mut cfg: BTreeMap<String, serde_json::Value> = BTreeMap::new();
            cfg.insert("energy_tol".into(), json!(energy_tol));
            cfg.insert("n_tol".into(), json!(n_tol));
            cfg.insert("resolved_erfc_variant".into(), json!(report.resolved_erfc_variant));
            cfg.insert("all_pass".into(), json!(report.all_pass));
            emit(&table, &cfg, &output)?;
            Ok(if report.all_pass { 0 } else { 5 })
        }
    }
}
