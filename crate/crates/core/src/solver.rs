//! Generic 1-D bracketing root finder, extremum finder, and curve sweeper
//! shared by both variational models.

use crate::error::{Error, Result};
use crate::local::LocalModel;
use crate::nonlocal::NonlocalModel;
use crate::types::{
    BranchCurve, CriticalPoint, CurvePoint, EnergyBreakdown, GaussianAnsatz, PointKind, Stability,
    StationaryPoint,
};

/// Default sigma search window (oscillator units).  All finite stationary
/// points of either model sit well inside it.
pub const DEFAULT_WINDOW: (f64, f64) = (1e-3, 10.0);

/// Grid resolution of the sign scan used for root isolation.
pub const SCAN_POINTS: usize = 2000;

/// Sigma tolerance of refined roots.
pub const SIGMA_TOL: f64 = 1e-12;

/// |d^2 eps / d sigma^2| below this is reported as degenerate rather than
/// classified.
pub const CURVATURE_FLOOR: f64 = 1e-8;

/// Common surface of the two variational models, in oscillator units.
pub trait VariationalModel: Clone {
    fn energy_at(&self, sigma: f64) -> EnergyBreakdown;
    fn denergy_dsigma_at(&self, sigma: f64) -> f64;
    fn boson_number(&self) -> f64;
    fn with_boson_number(&self, n: f64) -> Self;
    /// Boson number making `sigma` stationary (may be negative: no
    /// stationary point with positive N there).
    fn n_of_sigma(&self, sigma: f64) -> Result<f64>;
    /// Whether the sigma -> 0 collapse channel undercuts every minimum
    /// (attractive contact coupling).
    fn has_collapse_channel(&self) -> bool;
    fn descriptor(&self) -> String;
}

impl VariationalModel for LocalModel {
    fn energy_at(&self, sigma: f64) -> EnergyBreakdown {
        self.energy(&GaussianAnsatz::new(sigma).expect("sigma > 0"))
    }
    fn denergy_dsigma_at(&self, sigma: f64) -> f64 {
        self.denergy_dsigma(&GaussianAnsatz::new(sigma).expect("sigma > 0"))
    }
    fn boson_number(&self) -> f64 {
        self.n
    }
    fn with_boson_number(&self, n: f64) -> Self {
        LocalModel { b: self.b, n }
    }
    fn n_of_sigma(&self, sigma: f64) -> Result<f64> {
        LocalModel::n_of_sigma(self.b, sigma)
    }
    fn has_collapse_channel(&self) -> bool {
        self.b < 0.0
    }
    fn descriptor(&self) -> String {
        format!("local(b={})", self.b)
    }
}

impl VariationalModel for NonlocalModel {
    fn energy_at(&self, sigma: f64) -> EnergyBreakdown {
        self.energy(&GaussianAnsatz::new(sigma).expect("sigma > 0"))
    }
    fn denergy_dsigma_at(&self, sigma: f64) -> f64 {
        self.denergy_dsigma(&GaussianAnsatz::new(sigma).expect("sigma > 0"))
    }
    fn boson_number(&self) -> f64 {
        self.n
    }
    fn with_boson_number(&self, n: f64) -> Self {
        NonlocalModel { n, ..*self }
    }
    fn n_of_sigma(&self, sigma: f64) -> Result<f64> {
        // epsilon is linear in N; solve the analytic derivative for N.
        let g = self.with_boson_number(0.0).denergy_dsigma_at(sigma);
        let h = self.with_boson_number(1.0).denergy_dsigma_at(sigma) - g;
        if h == 0.0 || !h.is_finite() {
            return Err(Error::Pole { sigma });
        }
        Ok(-g / h)
    }
    fn has_collapse_channel(&self) -> bool {
        self.b < 0.0
    }
    fn descriptor(&self) -> String {
        format!("nonlocal(b={}, a={}, gamma={})", self.b, self.a, self.gamma)
    }
}

/// Brent's method on a bracketing interval.  Converges when
/// `|f(root)| <= tol` or the interval width drops below
/// `tol * max(1, |root|)`.
pub fn find_root<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa * fb > 0.0 {
        return Err(Error::Bracket { what: "f", lo, hi });
    }
    let (mut c, mut fc) = (a, fa);
    let (mut d, mut e) = (b - a, b - a);
    for _ in 0..200 {
        if fb * fc > 0.0 {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol * b.abs().max(1.0);
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 || fb.abs() <= tol {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // inverse quadratic / secant step
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let q0 = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * q0 * (q0 - r) - (b - a) * (r - 1.0));
                q = (q0 - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
    }
    Ok(b)
}

/// Golden-section search for a maximum of `f` on [lo, hi] (unimodal there).
pub fn golden_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Second derivative of epsilon at sigma via Richardson-extrapolated
/// central differences of the analytic first derivative, with the step
/// capped so no evaluation leaves [lo, hi].
fn second_derivative<M: VariationalModel>(model: &M, sigma: f64, lo: f64, hi: f64) -> f64 {
    let h0 = (1e-4 * sigma).min(sigma - lo).min(hi - sigma).max(1e-9 * sigma);
    let d = |h: f64| (model.denergy_dsigma_at(sigma + h) - model.denergy_dsigma_at(sigma - h)) / (2.0 * h);
    let d1 = d(h0);
    let d2 = d(0.5 * h0);
    (4.0 * d2 - d1) / 3.0
}

fn classify<M: VariationalModel>(model: &M, sigma: f64, lo: f64, hi: f64) -> PointKind {
    let c = second_derivative(model, sigma, lo, hi);
    if c.abs() < CURVATURE_FLOOR {
        PointKind::Degenerate
    } else if c > 0.0 {
        PointKind::Minimum
    } else {
        PointKind::Maximum
    }
}

/// All stationary points of `model` (at its boson number) inside `window`,
/// ordered by sigma and classified.  An empty list is a valid outcome,
/// not an error.
pub fn find_branches<M: VariationalModel>(model: &M, window: (f64, f64)) -> Result<Vec<StationaryPoint>> {
    let (lo, hi) = window;
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::domain(format!("invalid sigma window [{lo}, {hi}]")));
    }
    let f = |s: f64| model.denergy_dsigma_at(s);
    let step = (hi - lo) / (SCAN_POINTS - 1) as f64;
    let mut sigmas: Vec<f64> = Vec::new();
    let mut kinds: Vec<PointKind> = Vec::new();
    let mut prev_s = lo;
    let mut prev_f = f(lo);
    let mut vals = vec![prev_f];
    for i in 1..SCAN_POINTS {
        let s = lo + step * i as f64;
        let fs = f(s);
        vals.push(fs);
        if prev_f == 0.0 {
            // grid point is itself a root; handled when pushed below
        }
        if prev_f * fs < 0.0 {
            let root = find_root(f, prev_s, s, SIGMA_TOL)?;
            sigmas.push(root);
            kinds.push(classify(model, root, lo, hi));
        } else if fs == 0.0 && i < SCAN_POINTS - 1 {
            sigmas.push(s);
            kinds.push(classify(model, s, lo, hi));
        }
        prev_s = s;
        prev_f = fs;
    }
    // Tangent (double) roots carry no sign change: refine every interior
    // minimum of |f| away from the roots already found and keep the ones
    // that actually touch zero.
    for i in 1..SCAN_POINTS - 1 {
        let same_sign = vals[i - 1] * vals[i] > 0.0 && vals[i] * vals[i + 1] > 0.0;
        let (fm, f0, fp) = (vals[i - 1].abs(), vals[i].abs(), vals[i + 1].abs());
        if !(same_sign && f0 < fm && f0 < fp) {
            continue;
        }
        let s = lo + step * i as f64;
        if sigmas.iter().any(|&r| (r - s).abs() <= 2.0 * step) {
            continue;
        }
        let refined = golden_max(|x| -f(x).abs(), s - step, s + step, SIGMA_TOL);
        if f(refined).abs() < 1e-9 {
            sigmas.push(refined);
            kinds.push(PointKind::Degenerate);
        }
    }
    let mut order: Vec<usize> = (0..sigmas.len()).collect();
    order.sort_by(|&i, &j| sigmas[i].total_cmp(&sigmas[j]));

    // Stability: maxima are unstable; with a collapse channel every
    // minimum is metastable; otherwise the lowest minimum is the stable
    // state and the rest are metastable.
    let min_energy = order
        .iter()
        .filter(|&&i| kinds[i] == PointKind::Minimum)
        .map(|&i| model.energy_at(sigmas[i]).total)
        .fold(f64::INFINITY, f64::min);
    let mut out = Vec::with_capacity(order.len());
    for &i in &order {
        let sigma = sigmas[i];
        let energy = model.energy_at(sigma);
        let stability = match kinds[i] {
            PointKind::Maximum | PointKind::Degenerate => Stability::Unstable,
            PointKind::Minimum => {
                if model.has_collapse_channel() {
                    Stability::Metastable
                } else if energy.total <= min_energy + 1e-12 * min_energy.abs().max(1.0) {
                    Stability::Stable
                } else {
                    Stability::Metastable
                }
            }
        };
        out.push(StationaryPoint { sigma, energy, kind: kinds[i], stability });
    }
    Ok(out)
}

/// Tabulate the stationary curve (sigma, N(sigma), epsilon, kind) over a
/// sigma range.  Poles of N(sigma) become gaps.  `log_grid` spaces the
/// samples geometrically for the small-sigma collapse region.
pub fn sweep<M: VariationalModel>(
    model: &M,
    sigma_range: (f64, f64),
    steps: usize,
    log_grid: bool,
) -> Result<BranchCurve> {
    let (lo, hi) = sigma_range;
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::domain(format!("invalid sigma range [{lo}, {hi}]")));
    }
    if steps < 2 {
        return Err(Error::domain("sweep needs at least 2 steps"));
    }
    let mut points = Vec::with_capacity(steps);
    for i in 0..steps {
        let t = i as f64 / (steps - 1) as f64;
        let s = if log_grid {
            lo * (hi / lo).powf(t)
        } else {
            lo + (hi - lo) * t
        };
        let n = match model.n_of_sigma(s) {
            Ok(n) if n.is_finite() => n,
            _ => continue, // pole: gap in the curve
        };
        let at_n = model.with_boson_number(n);
        let energy = at_n.energy_at(s);
        let kind = classify(&at_n, s, lo * 0.5, hi * 2.0);
        points.push(CurvePoint { sigma: s, n, energy, kind });
    }
    Ok(BranchCurve { model: model.descriptor(), points })
}

/// Collapse threshold by numeric maximization of N(sigma) over the window.
/// Requires an attractive contact coupling.
pub fn critical_scan<M: VariationalModel>(model: &M, window: (f64, f64)) -> Result<CriticalPoint> {
    if !model.has_collapse_channel() {
        return Err(Error::domain(
            "critical point requires attractive contact coupling (b < 0)",
        ));
    }
    let (lo, hi) = window;
    let n_at = |s: f64| model.n_of_sigma(s).unwrap_or(f64::NEG_INFINITY);
    // coarse scan first: the non-local N(sigma) need not be unimodal
    let mut best_s = lo;
    let mut best_n = f64::NEG_INFINITY;
    let steps = SCAN_POINTS;
    for i in 0..steps {
        let s = lo + (hi - lo) * i as f64 / (steps - 1) as f64;
        let n = n_at(s);
        if n > best_n {
            best_n = n;
            best_s = s;
        }
    }
    let pad = (hi - lo) / (steps - 1) as f64;
    let a = (best_s - pad).max(lo);
    let b = (best_s + pad).min(hi);
    // Golden section stalls at ~sqrt(eps) relative accuracy around a
    // quadratic maximum; polish by solving dN/dsigma = 0 instead, with a
    // Richardson-extrapolated central difference.
    let dn = |s: f64| {
        let h = 1e-5 * s;
        let d1 = (n_at(s + h) - n_at(s - h)) / (2.0 * h);
        let d2 = (n_at(s + 0.5 * h) - n_at(s - 0.5 * h)) / h;
        (4.0 * d2 - d1) / 3.0
    };
    let sigma_min = find_root(dn, a, b, 1e-14).unwrap_or_else(|_| golden_max(n_at, a, b, 1e-13));
    let n_max = model
        .n_of_sigma(sigma_min)
        .map_err(|_| Error::Pole { sigma: sigma_min })?;
    Ok(CriticalPoint { sigma_min, n_max })
}
