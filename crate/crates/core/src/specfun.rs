//! Error function, complementary error function, and the scaled complement
//! `erfcx(x) = exp(x^2) * erfc(x)`.
//!
//! The screened-interaction model needs the product `exp(g^2 s^2 / 2) *
//! erfc(g s / sqrt(2))` at large `g s`, where composing `exp` with `erfc`
//! overflows long before the product leaves the representable range.
//! `erfcx` is therefore the primitively computed quantity for large
//! arguments, via the Laplace continued fraction; small arguments go
//! through an all-positive-term series for `erf` (no cancellation).

use crate::error::{Error, Result};

const FRAC_2_SQRT_PI: f64 = 1.128_379_167_095_512_6; // 2/sqrt(pi)
const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3; // 1/sqrt(pi)

/// Crossover between the series and the continued fraction.
const SERIES_CUTOFF: f64 = 2.0;

/// erf via the confluent series
/// `erf(x) = (2/sqrt(pi)) x e^{-x^2} sum_n (2x^2)^n / (2n+1)!!`.
///
/// Every term is positive, so the sum carries no cancellation; converges
/// for all x, used for |x| < 2.
fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let two_x2 = 2.0 * x2;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut odd = 1.0;
    for _ in 0..200 {
        odd += 2.0;
        term *= two_x2 / odd;
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
    }
    FRAC_2_SQRT_PI * x * (-x2).exp() * sum
}

/// Laplace continued fraction for erfcx, modified Lentz evaluation:
/// `erfcx(x) = (1/sqrt(pi)) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))`.
///
/// Used for x >= 2 where it converges to machine precision well within
/// the iteration cap.
fn erfcx_cf(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    if f == 0.0 {
        f = TINY;
    }
    let mut c = f;
    let mut d = 0.0;
    for n in 1..=500 {
        let a = 0.5 * n as f64;
        d = x + a * d;
        if d == 0.0 {
            d = TINY;
        }
        c = x + a / c;
        if c == 0.0 {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    FRAC_1_SQRT_PI / f
}

/// Error function.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let ax = x.abs();
    if ax < SERIES_CUTOFF {
        erf_series(x)
    } else {
        let tail = erfcx_cf(ax) * (-ax * ax).exp();
        (1.0 - tail).copysign(x)
    }
}

/// Complementary error function, erfc(x) = 1 - erf(x).
///
/// Relative accuracy is ~1e-13 or better over |x| <= 10; NaN propagates.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    if x < SERIES_CUTOFF {
        1.0 - erf_series(x)
    } else {
        erfcx_cf(x) * (-x * x).exp()
    }
}

/// Scaled complementary error function, erfcx(x) = exp(x^2) erfc(x),
/// computed without intermediate overflow.  Defined here for x >= 0 only.
pub fn erfcx(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Ok(f64::NAN);
    }
    if x < 0.0 {
        return Err(Error::domain(format!("erfcx requires x >= 0, got {x}")));
    }
    Ok(erfcx_nonneg(x))
}

/// Internal overflow-free erfcx for callers that guarantee x >= 0.
pub(crate) fn erfcx_nonneg(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x < SERIES_CUTOFF {
        (x * x).exp() * (1.0 - erf_series(x))
    } else {
        erfcx_cf(x)
    }
}
