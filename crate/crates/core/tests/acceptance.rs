//! Acceptance gate: the eight release criteria, one test each, every one
//! printing a single `[PASS]`/`[FAIL]` line (visible with `--nocapture`).

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trapbec_core::gpe::{relax, RadialGrid, RelaxConfig};
use trapbec_core::nonlocal::witness;
use trapbec_core::oracle::{fd_derivative, quad_energy, QuadratureSpec};
use trapbec_core::solver::{critical_scan, find_branches, DEFAULT_WINDOW};
use trapbec_core::validate::{run_validation, ValidationConfig};
use trapbec_core::{
    GaussianAnsatz, InteractionKernel, LocalModel, NonlocalModel, PointKind,
};

const SIGMA_MIN_EXACT: f64 = 0.668_740_304_976_422_1; // 5^(-1/4)

fn report(criterion: &str, pass: bool, detail: String) {
    let tag = if pass { "[PASS]" } else { "[FAIL]" };
    println!("{tag} {criterion}: {detail}");
    assert!(pass, "{criterion}: {detail}");
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn criterion_1_critical_radius() {
    let t = Instant::now();
    let mut worst = 0.0f64;
    for b in [-0.3, -1.0, -7.5] {
        let cp = LocalModel::critical_point(b).unwrap();
        worst = worst.max(rel(cp.sigma_min, SIGMA_MIN_EXACT));
        let scan = critical_scan(&LocalModel { b, n: 0.0 }, (0.2, 2.0)).unwrap();
        worst = worst.max(rel(scan.sigma_min, SIGMA_MIN_EXACT));
    }
    let pass = worst < 1e-10 && t.elapsed().as_secs_f64() < 1.0;
    report(
        "criterion 1 (critical radius 5^(-1/4))",
        pass,
        format!("worst rel err {worst:.3e}, {:?}", t.elapsed()),
    );
}

#[test]
fn criterion_2_critical_number() {
    let t = Instant::now();
    // b = 4 pi a_s in oscillator units, so |a_s| = |b| / (4 pi) and the
    // dimensionless critical number is n_max * |a_s| / a_ho.
    let a_s = 0.01;
    let b = -4.0 * std::f64::consts::PI * a_s;
    let closed = LocalModel::critical_point(b).unwrap();
    let scanned = critical_scan(&LocalModel { b, n: 0.0 }, (0.2, 2.0)).unwrap();
    let closed_val = closed.n_max * a_s;
    let scanned_val = scanned.n_max * a_s;
    let vs_published = rel(closed_val, 0.67049);
    let cross = rel(scanned_val, closed_val);
    let pass = vs_published < 1e-4 && cross < 1e-9 && t.elapsed().as_secs_f64() < 1.0;
    report(
        "criterion 2 (critical number 0.67049)",
        pass,
        format!(
            "closed {closed_val:.10}, scan {scanned_val:.10}, vs 0.67049 {vs_published:.2e}, cross {cross:.2e}"
        ),
    );
}

#[test]
fn criterion_3_noninteracting_limit() {
    let t = Instant::now();
    let m = LocalModel { b: 1.0, n: 0.0 };
    let pts = find_branches(&m, DEFAULT_WINDOW).unwrap();
    let var_ok = pts.len() == 1
        && rel(pts[0].sigma, 1.0) < 1e-10
        && (pts[0].energy.total - 1.5).abs() < 1e-12;
    let state = relax(0.0, &RadialGrid::default(), &RelaxConfig::default()).unwrap();
    let grid_ok = (state.energy.total - 1.5).abs() < 1e-7
        && (state.mu - 1.5).abs() < 1e-7
        && state.gaussian_overlap(1.0) > 1.0 - 1e-8;
    let pass = var_ok && grid_ok && t.elapsed().as_secs_f64() < 5.0;
    report(
        "criterion 3 (noninteracting limit)",
        pass,
        format!(
            "variational sigma {:.12}, eps {:.12}; grid eps {:.9}, mu {:.9}, overlap {:.10}",
            pts[0].sigma,
            pts[0].energy.total,
            state.energy.total,
            state.mu,
            state.gaussian_overlap(1.0)
        ),
    );
}

#[test]
fn criterion_4_oracle_equivalence() {
    let t = Instant::now();
    let spec = QuadratureSpec::default();
    let mut worst = 0.0f64;
    for i in 0..20 {
        let sigma = 0.3 + (3.0 - 0.3) * i as f64 / 19.0;
        for j in 0..10 {
            let bn = -5.0 + 55.0 * j as f64 / 9.0;
            let cf = LocalModel { b: bn, n: 1.0 }
                .energy(&GaussianAnsatz::new(sigma).unwrap())
                .total;
            let or = quad_energy(&InteractionKernel::Contact { b: bn }, 1.0, sigma, &spec)
                .unwrap()
                .total;
            worst = worst.max(rel(cf, or));
        }
    }
    let pass = worst < 1e-9 && t.elapsed().as_secs_f64() < 30.0;
    report(
        "criterion 4 (closed-form energy vs quadrature, 20x10 grid)",
        pass,
        format!("worst rel err {worst:.3e}, {:?}", t.elapsed()),
    );
}

#[test]
fn criterion_5_branch_structure() {
    let t = Instant::now();
    let one = find_branches(&LocalModel { b: 1.0, n: 10.0 }, DEFAULT_WINDOW).unwrap();
    let repulsive_ok = one.len() == 1 && one[0].kind == PointKind::Minimum;

    let cp = LocalModel::critical_point(-1.0).unwrap();
    let two = find_branches(&LocalModel { b: -1.0, n: 0.5 * cp.n_max }, DEFAULT_WINDOW).unwrap();
    let attractive_ok = two.len() == 2
        && two[0].kind == PointKind::Maximum
        && two[1].kind == PointKind::Minimum
        && two[0].sigma < two[1].sigma;

    let m = NonlocalModel::new(witness::B, witness::A, witness::GAMMA, witness::N).unwrap();
    let three = find_branches(&m, witness::WINDOW).unwrap();
    let witness_ok = three.len() == 3
        && three[0].kind == PointKind::Minimum
        && three[1].kind == PointKind::Maximum
        && three[2].kind == PointKind::Minimum;

    let pass = repulsive_ok && attractive_ok && witness_ok && t.elapsed().as_secs_f64() < 10.0;
    report(
        "criterion 5 (branch structure 1/2/3)",
        pass,
        format!(
            "repulsive {} pt(s); attractive {} pt(s); witness {} pt(s) [{:?}]",
            one.len(),
            two.len(),
            three.len(),
            three.iter().map(|p| p.kind).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn criterion_6_published_n_of_sigma() {
    let t = Instant::now();
    let report_ = run_validation(&ValidationConfig::default()).unwrap();
    let n_rows: Vec<_> = report_
        .points
        .iter()
        .filter(|p| p.check.contains("stationarity oracle"))
        .collect();
    let worst = n_rows.iter().map(|p| p.rel_error).fold(0.0f64, f64::max);
    let pass = !n_rows.is_empty()
        && n_rows.iter().all(|p| p.pass)
        && report_.resolved_erfc_variant == "erfc(sigma*Gamma/sqrt(2))"
        && t.elapsed().as_secs_f64() < 60.0;
    report(
        "criterion 6 (published N(sigma) vs stationarity oracle)",
        pass,
        format!(
            "{} points, worst rel err {worst:.3e}, resolved variant: {}",
            n_rows.len(),
            report_.resolved_erfc_variant
        ),
    );
}

#[test]
fn criterion_7_variational_upper_bound() {
    let t = Instant::now();
    let grid = RadialGrid::default();
    let mut detail = String::new();
    let mut pass = true;
    for bn in [1.0, 5.0, 20.0, 50.0] {
        let state = relax(bn, &grid, &RelaxConfig::default()).unwrap();
        let pts = find_branches(&LocalModel { b: bn, n: 1.0 }, DEFAULT_WINDOW).unwrap();
        let e_var = pts
            .iter()
            .filter(|p| p.kind == PointKind::Minimum)
            .map(|p| p.energy.total)
            .fold(f64::INFINITY, f64::min);
        let bound = state.energy.total <= e_var + 1e-10;
        let virial = state.virial_residual();
        pass &= bound && virial < 1e-6;
        detail.push_str(&format!(
            "bN={bn}: grid {:.9} vs gaussian {:.9}, virial {:.2e}; ",
            state.energy.total, e_var, virial
        ));
    }
    pass &= t.elapsed().as_secs_f64() < 120.0;
    report(
        "criterion 7 (grid energy below gaussian minimum, virial < 1e-6)",
        pass,
        format!("{detail}{:?}", t.elapsed()),
    );
}

#[test]
fn criterion_8_derivative_integrity() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xD1FF);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let sigma = rng.gen_range(0.4..2.5);
        let b = rng.gen_range(-2.0..2.0);
        let n = rng.gen_range(0.0..20.0);
        let m = LocalModel { b, n };
        let an = m.denergy_dsigma(&GaussianAnsatz::new(sigma).unwrap());
        let fd = fd_derivative(|s| m.energy(&GaussianAnsatz::new(s).unwrap()).total, sigma, 1);
        worst = worst.max((fd.value - an).abs() / an.abs());
    }
    for _ in 0..500 {
        let sigma = rng.gen_range(0.4..2.5);
        let b = rng.gen_range(-2.0..2.0);
        let a = rng.gen_range(0.0..3.0);
        let gamma = rng.gen_range(0.0..8.0);
        let n = rng.gen_range(0.0..20.0);
        let m = NonlocalModel { b, a, gamma, n };
        let an = m.denergy_dsigma(&GaussianAnsatz::new(sigma).unwrap());
        let fd = fd_derivative(|s| m.energy(&GaussianAnsatz::new(s).unwrap()).total, sigma, 1);
        worst = worst.max((fd.value - an).abs() / an.abs());
    }
    let pass = worst < 1e-8 && t.elapsed().as_secs_f64() < 10.0;
    report(
        "criterion 8 (analytic derivative vs Richardson differences, 10^3 samples)",
        pass,
        format!("worst rel err {worst:.3e}, {:?}", t.elapsed()),
    );
}
