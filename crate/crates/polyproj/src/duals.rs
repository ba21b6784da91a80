//! Dual variables defined by implicit equations.
//!
//! * `s_gamma` solves `R(s) = 1 - gamma`, and `y_gamma = gamma s_gamma / (1 - gamma)`.
//! * `x_nu` (simplex) and `y_nu` (cross-polytope) minimize
//!   `nu t^2 - (1 - nu) log CDF(t)`. Equivalently they solve
//!   `2 t CDF(t)/density(t) = 1/nu - 1`.
//! * `z_gamma < 0` is the real critical point of
//!   `psi_gamma(z) = z^2/2 + (1 - gamma) log(2 Phi(z))`.
//!
//! Each root is found by Newton's method safeguarded by a sign-change
//! bracket. All residual functions are monotone, so the bracket is
//! reliable.

use crate::error::{domain, Error, Result};
use crate::exponents::Family;
use crate::specfun::{self, erfcx, Approximant, GaussKind};
use libm::erf;

pub const MAX_ITER: usize = 200;
pub const RESIDUAL_TOL: f64 = 1e-12;

const SQRT_PI: f64 = 1.772_453_850_905_516;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaDual {
    pub gamma: f64,
    pub s_gamma: f64,
    pub y_gamma: f64,
    /// `|R(s_gamma) - (1 - gamma)|`.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuDual {
    pub family: Family,
    pub nu: f64,
    pub argmin: f64,
    /// Defining equation multiplied through by `nu`, so it is O(1) for every `nu`.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddlePoint {
    pub gamma: f64,
    pub z_gamma: f64,
    /// `|psi_gamma'(z_gamma)|`.
    pub residual: f64,
}

/// Safeguarded Newton on an increasing function with `f(lo) < 0 < f(hi)`.
fn newton_bracketed(
    what: &'static str,
    f: impl Fn(f64) -> (f64, f64),
    mut lo: f64,
    mut hi: f64,
    start: f64,
) -> Result<(f64, f64)> {
    let mut x = if start > lo && start < hi {
        start
    } else {
        0.5 * (lo + hi)
    };
    let mut last = f64::INFINITY;
    for _ in 0..MAX_ITER {
        let (v, dv) = f(x);
        last = v;
        if v == 0.0 {
            return Ok((x, 0.0));
        }
        if v < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = x - v / dv;
        if !(dv > 0.0) || !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let step = (next - x).abs();
        x = next;
        if step <= 1e-16 * x.abs().max(1e-300) || hi - lo <= 2.0 * f64::EPSILON * x.abs() {
            let (v, _) = f(x);
            return Ok((x, v));
        }
    }
    Err(Error::Convergence {
        what,
        iterations: MAX_ITER,
        residual: last.abs(),
    })
}

pub fn solve_s_gamma(gamma: f64) -> Result<GammaDual> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return domain(format!("gamma must lie in (0,1), got {gamma}"));
    }
    let target = 1.0 - gamma;
    if target >= 1.0 {
        return domain(format!("gamma = {gamma} is below double resolution"));
    }
    let f = |s: f64| {
        let r = specfun::mills_r(s).unwrap_or(f64::NAN);
        let d = specfun::mills_r_deriv(s).unwrap_or(f64::NAN);
        (r - target, d)
    };
    let guess = specfun::approximant(Approximant::STilde, gamma, None).unwrap_or(1.0);
    let mut lo = 0.0;
    let mut hi = guess.max(1.0);
    while f(hi).0 < 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > 1e300 {
            return Err(Error::Bracket {
                what: "s_gamma",
                lo,
                hi,
            });
        }
    }
    let (s, r) = newton_bracketed("s_gamma", f, lo, hi, guess)?;
    if r.abs() > RESIDUAL_TOL {
        return Err(Error::Convergence {
            what: "s_gamma",
            iterations: MAX_ITER,
            residual: r.abs(),
        });
    }
    Ok(GammaDual {
        gamma,
        s_gamma: s,
        y_gamma: gamma * s / (1.0 - gamma),
        residual: r.abs(),
    })
}

/// `2 t CDF(t)/density(t)` and its derivative, for `t >= 0`.
fn ratio_term(family: Family, t: f64) -> (f64, f64) {
    // T = CDF/density, T' = 1 + 2 t T; returned pair is (2tT, 2T + 2t T').
    let big_t = match family {
        Family::Simplex => 0.5 * SQRT_PI * erfcx(-t),
        Family::Cross => 0.5 * SQRT_PI * (t * t).exp() * erf(t),
    };
    let v = 2.0 * t * big_t;
    let dv = 2.0 * big_t + 2.0 * t * (1.0 + 2.0 * t * big_t);
    (v, dv)
}

pub fn solve_external_argmin(family: Family, nu: f64) -> Result<NuDual> {
    if !(nu > 0.0 && nu < 1.0) {
        return domain(format!("nu must lie in (0,1), got {nu}"));
    }
    let rhs = 1.0 / nu - 1.0;
    let f = |t: f64| {
        let (v, dv) = ratio_term(family, t);
        (nu * (v - rhs), nu * dv)
    };
    let which = match family {
        Family::Simplex => Approximant::XTildePlus,
        Family::Cross => Approximant::YTildePm,
    };
    let guess = specfun::approximant(which, nu, None).ok();
    let mut hi = 2.0 + guess.unwrap_or(0.0);
    let mut lo = 0.0;
    while f(hi).0 < 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > 1e3 {
            return Err(Error::Bracket {
                what: "external argmin",
                lo,
                hi,
            });
        }
    }
    let start = guess.unwrap_or(0.5 * hi);
    let (t, r) = newton_bracketed("external argmin", f, lo, hi, start)?;
    if r.abs() > RESIDUAL_TOL {
        return Err(Error::Convergence {
            what: "external argmin",
            iterations: MAX_ITER,
            residual: r.abs(),
        });
    }
    Ok(NuDual {
        family,
        nu,
        argmin: t,
        residual: r.abs(),
    })
}

/// `psi_gamma(z) = z^2/2 + (1 - gamma) log(2 Phi(z))`.
pub fn psi_gamma(gamma: f64, z: f64) -> f64 {
    let lphi = specfun::ln_gauss_cdf(GaussKind::Phi, z).unwrap_or(f64::NEG_INFINITY);
    0.5 * z * z + (1.0 - gamma) * (std::f64::consts::LN_2 + lphi)
}

/// `phi(z)/Phi(z)` through logarithms.
fn hazard(z: f64) -> f64 {
    let ln_density = -0.5 * z * z - 0.5 * (2.0 * std::f64::consts::PI).ln();
    let ln_cdf = specfun::ln_gauss_cdf(GaussKind::Phi, z).unwrap_or(f64::NEG_INFINITY);
    (ln_density - ln_cdf).exp()
}

pub fn psi_gamma_deriv(gamma: f64, z: f64) -> f64 {
    z + (1.0 - gamma) * hazard(z)
}

pub fn psi_gamma_second(gamma: f64, z: f64) -> f64 {
    let r = hazard(z);
    1.0 - (1.0 - gamma) * r * (z + r)
}

/// Real negative saddlepoint of `psi_gamma`.
///
/// Solved from `psi_gamma'(z) = 0` directly, independently of
/// [`solve_s_gamma`]; the two agree because `z_gamma = -s_gamma`.
pub fn solve_saddlepoint_z(gamma: f64) -> Result<SaddlePoint> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return domain(format!("gamma must lie in (0,1), got {gamma}"));
    }
    // psi' is increasing on the negative axis where the root lives; flip
    // sign convention so the bracket helper sees an increasing function of u = -z.
    let f = |u: f64| {
        let v = -psi_gamma_deriv(gamma, -u);
        let dv = psi_gamma_second(gamma, -u);
        (v, dv)
    };
    let mut lo = 0.0;
    let mut hi = 1.0;
    while f(hi).0 < 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > 1e300 {
            return Err(Error::Bracket {
                what: "saddlepoint",
                lo,
                hi,
            });
        }
    }
    let (u, r) = newton_bracketed("saddlepoint", f, lo, hi, 0.5 * (lo + hi))?;
    if r.abs() > RESIDUAL_TOL {
        return Err(Error::Convergence {
            what: "saddlepoint",
            iterations: MAX_ITER,
            residual: r.abs(),
        });
    }
    Ok(SaddlePoint {
        gamma,
        z_gamma: -u,
        residual: r.abs(),
    })
}

/// Error envelope for `s_gamma ~ s_tilde`: `gamma^(1/2) / 2`, valid for `gamma <= 1/30`.
pub fn s_tilde_envelope(gamma: f64) -> f64 {
    0.5 * gamma.sqrt()
}

/// Leading approximation of `y_gamma`: `gamma^(1/2) / (1 - gamma)`.
pub fn y_gamma_approx(gamma: f64) -> f64 {
    gamma.sqrt() / (1.0 - gamma)
}

/// Error envelope for `y_gamma ~ y_gamma_approx`: `4 gamma^(3/2)`, valid for `gamma <= 1/30`.
pub fn y_gamma_envelope(gamma: f64) -> f64 {
    4.0 * gamma.powf(1.5)
}

/// Error envelope `(1/2) x_tilde^-1 (log log z)/(log z)` for the external
/// argmin of `family`.
///
/// The cross-polytope envelope keeps the simplex `x_tilde` in the leading
/// factor, with `z = z^pm` in the log ratio.
pub fn argmin_envelope(family: Family, nu: f64) -> Result<f64> {
    let xt = specfun::approximant(Approximant::XTildePlus, nu, None)?;
    let z = match family {
        Family::Simplex => specfun::z_plus(nu)?,
        Family::Cross => specfun::z_pm(nu)?,
    };
    let lz = z.ln();
    Ok(0.5 / xt * lz.ln() / lz)
}
