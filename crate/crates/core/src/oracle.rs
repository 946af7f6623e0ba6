//! Independent brute-force evaluation of the energy functional: adaptive
//! quadrature, Richardson finite differences, and a Monte Carlo pair
//! integral.  This module is the ground truth every closed form is checked
//! against, so it deliberately shares no formulas with `local` / `nonlocal`
//! beyond the trial wave function itself.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::params::InteractionKernel;
use crate::types::EnergyBreakdown;

/// Tolerances and limits for the adaptive quadrature.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Integration cutoff; `None` selects `max(10 sigma, 10/gamma)` capped
    /// by the Gaussian support (the density ends the integrand either way).
    pub outer_radius: Option<f64>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            max_subdivisions: 400,
            outer_radius: None,
        }
    }
}

impl QuadratureSpec {
    fn cutoff(&self, sigma: f64, gamma: f64) -> f64 {
        self.outer_radius.unwrap_or_else(|| {
            let kernel_range = if gamma > 0.0 { 10.0 / gamma } else { 0.0 };
            (10.0 * sigma).max(kernel_range.min(50.0 * sigma))
        })
    }
}

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule,
// on [-1, 1] (positive half; symmetric).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// One Gauss-Kronrod 15(7) panel: returns (kronrod, error_estimate).
fn qk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kronrod = 0.0;
    let mut gauss = 0.0;
    for (i, (&x, &wk)) in XGK.iter().zip(WGK.iter()).enumerate() {
        let (fa, fb) = (f(c - h * x), f(c + h * x));
        let fsum = if x == 0.0 { fa } else { fa + fb };
        kronrod += wk * fsum;
        // Gauss 7 lives on the odd-indexed Kronrod abscissae plus the center.
        if i % 2 == 1 || x == 0.0 {
            gauss += WG[i / 2] * fsum;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Globally adaptive Gauss-Kronrod integration of `f` over [a, b].
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    #[derive(Debug)]
    struct Panel {
        a: f64,
        b: f64,
        value: f64,
        err: f64,
    }
    let (v, e) = qk15(&f, a, b);
    let mut panels = vec![Panel { a, b, value: v, err: e }];
    for _ in 0..spec.max_subdivisions {
        let total: f64 = compensated_sum(panels.iter().map(|p| p.value));
        let err: f64 = panels.iter().map(|p| p.err).sum();
        if err <= spec.abs_tol.max(spec.rel_tol * total.abs()) {
            return Ok(total);
        }
        // split the worst panel
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i)
            .unwrap();
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            return Err(Error::QuadratureConvergence(format!(
                "panel [{}, {}] cannot be subdivided further (error {:e})",
                p.a, p.b, p.err
            )));
        }
        let (v1, e1) = qk15(&f, p.a, mid);
        let (v2, e2) = qk15(&f, mid, p.b);
        panels.push(Panel { a: p.a, b: mid, value: v1, err: e1 });
        panels.push(Panel { a: mid, b: p.b, value: v2, err: e2 });
    }
    Err(Error::QuadratureConvergence(format!(
        "tolerance not reached within {} subdivisions",
        spec.max_subdivisions
    )))
}

/// Recursive adaptive Simpson integration; the deliberately different
/// second rule used in self-consistency checks of the oracle itself.
pub fn integrate_simpson<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: u32,
) -> Result<f64> {
    fn simpson(a: f64, fa: f64, b: f64, fb: f64, fm: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64> {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(a, fa, m, fm, flm);
        let right = simpson(m, fm, b, fb, frm);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol {
            return Ok(left + right + delta / 15.0);
        }
        if depth == 0 {
            return Err(Error::QuadratureConvergence(
                "adaptive Simpson recursion depth exhausted".into(),
            ));
        }
        Ok(recurse(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1)?
            + recurse(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1)?)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = simpson(a, fa, b, fb, fm);
    recurse(&f, a, fa, b, fb, fm, whole, tol, max_depth)
}

fn compensated_sum<I: Iterator<Item = f64>>(it: I) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for x in it {
        let y = x - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

/// |Psi(r)|^2 for the Gaussian of width sigma.
fn density(sigma: f64, r: f64) -> f64 {
    let norm = std::f64::consts::PI.powf(-1.5) / (sigma * sigma * sigma);
    norm * (-r * r / (sigma * sigma)).exp()
}

fn dpsi_dr(sigma: f64, r: f64) -> f64 {
    let psi = std::f64::consts::PI.powf(-0.75) * sigma.powf(-1.5)
        * (-r * r / (2.0 * sigma * sigma)).exp();
    -r / (sigma * sigma) * psi
}

/// Angular average of the screened kernel against a shell at r':
/// `int d3r' rho(r') exp(-g s)/s = (2 pi / r) int r' rho(r') K(r, r') dr'`
/// with `K = (exp(-g|r-r'|) - exp(-g(r+r'))) / g`, and the g -> 0 limit
/// `K = 2 min(r, r')` taken analytically to avoid cancellation.
fn pair_kernel(gamma: f64, r: f64, rp: f64) -> f64 {
    if gamma == 0.0 {
        2.0 * r.min(rp)
    } else {
        // factored via expm1 so the gamma -> 0 cancellation is exact
        (-gamma * (r - rp).abs()).exp() * (-(-2.0 * gamma * r.min(rp)).exp_m1()) / gamma
    }
}

/// Quadrature evaluation of the energy functional on the Gaussian ansatz.
pub fn quad_energy(
    kernel: &InteractionKernel,
    n: f64,
    sigma: f64,
    spec: &QuadratureSpec,
) -> Result<EnergyBreakdown> {
    if !(sigma > 0.0) {
        return Err(Error::domain(format!("sigma must be > 0, got {sigma}")));
    }
    kernel.validate()?;
    let (b, a, gamma) = kernel.couplings();
    let rmax = spec.cutoff(sigma, gamma);
    let four_pi = 4.0 * std::f64::consts::PI;

    let kinetic = integrate(
        |r| 0.5 * dpsi_dr(sigma, r).powi(2) * four_pi * r * r,
        0.0,
        rmax,
        spec,
    )?;
    let trap = integrate(
        |r| 0.5 * r * r * density(sigma, r) * four_pi * r * r,
        0.0,
        rmax,
        spec,
    )?;

    let mut interaction = 0.0;
    if b != 0.0 {
        let psi4 = integrate(
            |r| density(sigma, r).powi(2) * four_pi * r * r,
            0.0,
            rmax,
            spec,
        )?;
        interaction += 0.5 * b * n * psi4;
    }
    if a != 0.0 {
        // iterated 1-D adaptive quadrature; the inner integral is split at
        // r' = r where the angular-averaged kernel has a kink
        let inner_spec = QuadratureSpec {
            rel_tol: spec.rel_tol * 0.1,
            abs_tol: spec.abs_tol * 0.1,
            ..*spec
        };
        let inner = |r: f64| -> f64 {
            let g = |rp: f64| rp * density(sigma, rp) * pair_kernel(gamma, r, rp);
            let split = r.min(rmax);
            let left = integrate(g, 0.0, split, &inner_spec).unwrap_or(f64::NAN);
            let right = integrate(g, split, rmax, &inner_spec).unwrap_or(f64::NAN);
            2.0 * std::f64::consts::PI / r * (left + right)
        };
        let double = integrate(
            |r| density(sigma, r) * inner(r) * four_pi * r * r,
            1e-12,
            rmax,
            spec,
        )?;
        if !double.is_finite() {
            return Err(Error::QuadratureConvergence(
                "inner pair integral failed to converge".into(),
            ));
        }
        interaction -= 0.5 * a * n * double;
    }
    Ok(EnergyBreakdown::new(kinetic, trap, interaction))
}

/// Quadrature of the squared norm of the ansatz (should be 1 for any sigma).
pub fn quad_norm(sigma: f64, spec: &QuadratureSpec) -> Result<f64> {
    let rmax = spec.cutoff(sigma, 0.0);
    integrate(
        |r| density(sigma, r) * 4.0 * std::f64::consts::PI * r * r,
        0.0,
        rmax,
        spec,
    )
}

/// Finite-difference derivative with its error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Derivative {
    pub value: f64,
    pub error_estimate: f64,
}

/// Central finite difference of first or second order with Richardson
/// extrapolation (Ridders-style tableau).
pub fn fd_derivative<F: Fn(f64) -> f64>(f: F, x: f64, order: u8) -> Derivative {
    assert!(order == 1 || order == 2, "order must be 1 or 2");
    let mut h = 0.02 * x.abs().max(1.0);
    let con = 1.6;
    let con2 = con * con;
    const NTAB: usize = 12;
    let mut tab = [[0.0f64; NTAB]; NTAB];
    let sample = |h: f64| -> f64 {
        match order {
            1 => (f(x + h) - f(x - h)) / (2.0 * h),
            _ => (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h),
        }
    };
    tab[0][0] = sample(h);
    let mut best = tab[0][0];
    let mut err = f64::INFINITY;
    for i in 1..NTAB {
        h /= con;
        tab[0][i] = sample(h);
        let mut fac = con2;
        for j in 1..=i {
            tab[j][i] = (tab[j - 1][i] * fac - tab[j - 1][i - 1]) / (fac - 1.0);
            fac *= con2;
            let errt = (tab[j][i] - tab[j - 1][i])
                .abs()
                .max((tab[j][i] - tab[j - 1][i - 1]).abs());
            if errt <= err {
                err = errt;
                best = tab[j][i];
            }
        }
        if (tab[i][i] - tab[i - 1][i - 1]).abs() >= 2.0 * err {
            break; // higher order no longer helps; noise dominates
        }
    }
    Derivative { value: best, error_estimate: err }
}

/// Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// Monte Carlo estimate of the pair interaction energy per particle
/// `(n/2) <V(|r - r'|)>` with both points drawn from the Gaussian density.
/// Only the screened kernel is admissible (a delta function cannot be
/// sampled); reproducible for a fixed seed.
pub fn mc_pair_integral(
    kernel: &InteractionKernel,
    n: f64,
    sigma: f64,
    samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    let (a, gamma) = match *kernel {
        InteractionKernel::Screened { a, gamma } => (a, gamma),
        _ => {
            return Err(Error::domain(
                "mc_pair_integral requires a purely screened kernel (delta functions are not MC-samplable)",
            ))
        }
    };
    if samples < 10_000 {
        return Err(Error::domain(format!("samples must be >= 10^4, got {samples}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // |Psi|^2 is an isotropic normal with per-component std sigma/sqrt(2)
    let normal = Normal::new(0.0, sigma / std::f64::consts::SQRT_2).unwrap();
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..samples {
        let mut s2 = 0.0;
        for _ in 0..3 {
            let d = normal.sample(&mut rng) - normal.sample(&mut rng);
            s2 += d * d;
        }
        let s = s2.sqrt();
        let v = -a * (-gamma * s).exp() / s;
        sum += v;
        sum_sq += v * v;
    }
    let m = sum / samples as f64;
    let var = (sum_sq / samples as f64 - m * m) / (samples as f64 - 1.0);
    Ok(McEstimate {
        value: 0.5 * n * m,
        std_error: 0.5 * n * var.max(0.0).sqrt(),
        samples,
    })
}
