//! Scalar special functions.
//!
//! | function | value |
//! |----------|-------|
//! | [`entropy`] | `H(p) = -p log p - (1-p) log(1-p)` in nats |
//! | [`gauss_cdf`] | `Q(x) = erfc(-x)/2`, `G(y) = erf(y)`, standard normal `Phi` |
//! | [`ln_gauss_cdf`] | logarithm of the above, stable far into the left tail |
//! | [`erfcx`] | scaled complementary error function `exp(x^2) erfc(x)` |
//! | [`mills_r`] | `R(s) = s exp(s^2/2) int_s^inf exp(-y^2/2) dy` |
//! | [`dawson`] | Dawson's integral `exp(-x^2) int_0^x exp(t^2) dt` |
//! | [`approximant`] | closed-form small-argument approximations |
//! | [`ln_binomial`] | `log C(n, k)` without factorials |
//!
//! `erf` and `erfc` come from `libm`; everything that needs relative
//! accuracy in a tail goes through [`erfcx`].

use crate::error::{domain, Error, Result};
use libm::{erf, erfc};
use std::f64::consts::{FRAC_2_SQRT_PI, LN_2, PI, SQRT_2};

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Shannon entropy in nats, with `0 log 0 = 0`.
pub fn entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return domain(format!("entropy argument {p} outside [0,1]"));
    }
    Ok(entropy_unchecked(p))
}

pub(crate) fn entropy_unchecked(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -p * p.ln() - (1.0 - p) * (-p).ln_1p()
}

/// Which Gaussian-type distribution function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GaussKind {
    /// Centered normal with variance 1/2: density `pi^(-1/2) exp(-x^2)`.
    Q,
    /// Half-normal on `[0, inf)`: density `2 pi^(-1/2) exp(-y^2)`, CDF `erf`.
    G,
    /// Standard normal.
    Phi,
}

pub fn gauss_cdf(kind: GaussKind, x: f64) -> Result<f64> {
    match kind {
        GaussKind::Q => Ok(0.5 * erfc(-x)),
        GaussKind::Phi => Ok(0.5 * erfc(-x / SQRT_2)),
        GaussKind::G => {
            if x < 0.0 {
                return domain(format!("half-normal CDF at negative argument {x}"));
            }
            Ok(erf(x))
        }
    }
}

pub fn gauss_density(kind: GaussKind, x: f64) -> f64 {
    match kind {
        GaussKind::Q => (-x * x).exp() / SQRT_PI,
        GaussKind::G => {
            if x < 0.0 {
                0.0
            } else {
                FRAC_2_SQRT_PI * (-x * x).exp()
            }
        }
        GaussKind::Phi => (-0.5 * x * x).exp() / (2.0 * PI).sqrt(),
    }
}

/// `ln CDF(x)`, accurate for large negative `x` where the CDF underflows.
pub fn ln_gauss_cdf(kind: GaussKind, x: f64) -> Result<f64> {
    match kind {
        GaussKind::Q => Ok(ln_q(x)),
        GaussKind::Phi => Ok(ln_q(x / SQRT_2)),
        GaussKind::G => {
            if x < 0.0 {
                return domain(format!("half-normal CDF at negative argument {x}"));
            }
            if x > 0.5 {
                Ok((-erfc(x)).ln_1p())
            } else {
                Ok(erf(x).ln())
            }
        }
    }
}

fn ln_q(x: f64) -> f64 {
    if x > 0.0 {
        (-0.5 * erfc(x)).ln_1p()
    } else {
        (0.5 * erfcx(-x)).ln() - x * x
    }
}

/// `exp(x^2) erfc(x)`.
///
/// Continued fraction for `x >= 4`, direct product below, reflection for
/// negative arguments.
pub fn erfcx(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        if x < -26.7 {
            return f64::INFINITY;
        }
        return 2.0 * (x * x).exp() - erfcx(-x);
    }
    if x < 4.0 {
        return (x * x).exp() * erfc(x);
    }
    if x.is_infinite() {
        return 0.0;
    }
    // x + (1/2)/(x + 1/(x + (3/2)/(x + ...))) by modified Lentz.
    let tiny = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for n in 1..5000 {
        let a = 0.5 * n as f64;
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    1.0 / (SQRT_PI * f)
}

/// `s exp(s^2/2) int_s^inf exp(-y^2/2) dy`, via `erfcx`.
pub fn mills_r(s: f64) -> Result<f64> {
    if s.is_nan() || s < 0.0 {
        return domain(format!("mills_r argument {s} is negative"));
    }
    if s.is_infinite() {
        return Ok(1.0);
    }
    Ok(s * tail_ratio(s))
}

/// `R'(s) = m(s)(1 + s^2) - s` where `m(s) = R(s)/s`.
pub fn mills_r_deriv(s: f64) -> Result<f64> {
    if s.is_nan() || s < 0.0 {
        return domain(format!("mills_r argument {s} is negative"));
    }
    let m = tail_ratio(s);
    Ok(m * (1.0 + s * s) - s)
}

/// Upper-tail probability over density for the standard normal.
pub(crate) fn tail_ratio(s: f64) -> f64 {
    (PI / 2.0).sqrt() * erfcx(s / SQRT_2)
}

/// Dawson's integral `F(x) = exp(-x^2) int_0^x exp(t^2) dt`.
pub fn dawson(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax < 0.2 {
        // alternating Taylor series, fast here
        let x2 = ax * ax;
        let mut term = ax;
        let mut sum = ax;
        for n in 1..40 {
            term *= -2.0 * x2 / (2 * n + 1) as f64;
            sum += term;
            if term.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        sum
    } else if ax < 8.0 {
        // exp(-x^2) sum x^(2n+1) / (n! (2n+1)), positive terms
        let x2 = ax * ax;
        let mut p = ax;
        let mut sum = ax;
        let mut n = 1usize;
        loop {
            p *= x2 / n as f64;
            let t = p / (2 * n + 1) as f64;
            sum += t;
            if t < 1e-17 * sum {
                break;
            }
            n += 1;
        }
        (-x2).exp() * sum
    } else {
        // asymptotic: (1/2x) sum (2n-1)!! / (2x^2)^n, cut at the smallest term
        let w = 1.0 / (2.0 * ax * ax);
        let mut term = 1.0;
        let mut sum = 1.0;
        for n in 1..200 {
            let next = term * (2 * n - 1) as f64 * w;
            if next > term {
                break;
            }
            term = next;
            sum += term;
            if term < 1e-17 * sum {
                break;
            }
        }
        sum / (2.0 * ax)
    };
    v.copysign(x)
}

/// Closed-form approximations used by the asymptotic analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Approximant {
    /// `gamma^(-1/2) - (3/2) gamma^(1/2)`, approximates `s_gamma`.
    STilde,
    /// `[log z - (1/2) log log z]^(1/2)` with `z = (2 nu sqrt(pi))^-1`, approximates `x_nu`.
    XTildePlus,
    /// Same with `z = (nu sqrt(pi))^-1`, approximates `y_nu`.
    YTildePm,
    /// `|tau log(2 sqrt(pi) delta)|^-1`.
    RStrongPlus,
    /// `|tau log(sqrt(pi) delta)|^-1`.
    RStrongPm,
    /// `[tau log(1/delta)]^-1`.
    RWeak,
}

pub fn approximant(which: Approximant, arg: f64, tau: Option<f64>) -> Result<f64> {
    match which {
        Approximant::STilde => {
            if !(arg > 0.0 && arg < 1.0) {
                return domain(format!("s_tilde needs gamma in (0,1), got {arg}"));
            }
            Ok(arg.powf(-0.5) - 1.5 * arg.sqrt())
        }
        Approximant::XTildePlus => x_tilde(z_plus(arg)?),
        Approximant::YTildePm => x_tilde(z_pm(arg)?),
        Approximant::RStrongPlus | Approximant::RStrongPm | Approximant::RWeak => {
            let tau = tau.ok_or_else(|| Error::Domain("tau is required".into()))?;
            if !(tau > 0.0 && tau.is_finite()) {
                return domain(format!("tau must be positive, got {tau}"));
            }
            if !(arg > 0.0 && arg < 1.0) {
                return domain(format!("delta must lie in (0,1), got {arg}"));
            }
            let l = match which {
                Approximant::RStrongPlus => (2.0 * SQRT_PI * arg).ln(),
                Approximant::RStrongPm => (SQRT_PI * arg).ln(),
                _ => -arg.ln(),
            };
            if l == 0.0 {
                return domain("logarithm vanishes at this delta");
            }
            Ok(1.0 / (tau * l).abs())
        }
    }
}

/// `z^+ = (2 nu sqrt(pi))^-1`.
pub fn z_plus(nu: f64) -> Result<f64> {
    if !(nu > 0.0 && nu < 1.0) {
        return domain(format!("nu must lie in (0,1), got {nu}"));
    }
    Ok(1.0 / (2.0 * nu * SQRT_PI))
}

/// `z^pm = (nu sqrt(pi))^-1`.
pub fn z_pm(nu: f64) -> Result<f64> {
    if !(nu > 0.0 && nu < 1.0) {
        return domain(format!("nu must lie in (0,1), got {nu}"));
    }
    Ok(1.0 / (nu * SQRT_PI))
}

fn x_tilde(z: f64) -> Result<f64> {
    if z <= std::f64::consts::E {
        return domain(format!("log log z undefined or negative at z = {z}"));
    }
    let lz = z.ln();
    Ok((lz - 0.5 * lz.ln()).sqrt())
}

/// `log C(n, k)` through `lgamma`; `-inf` when `k > n`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    if k == 0 || k == n {
        return 0.0;
    }
    let (n, k) = (n as f64, k as f64);
    libm::lgamma(n + 1.0) - libm::lgamma(k + 1.0) - libm::lgamma(n - k + 1.0)
}

/// `log 2`, re-exported for the exponent formulas.
pub(crate) const LOG2: f64 = LN_2;
