//! Exponent functions for the simplex and the cross-polytope.
//!
//! With `H` the natural-log entropy, `y_gamma` and `x_nu`/`y_nu` from
//! [`crate::duals`]:
//!
//! ```text
//! psi_com   = H(nu) + nu H(gamma)                [+ nu log 2 for the cross-polytope]
//! psi_int   = nu (1-gamma) [log(y/gamma) + log(2 pi)/2 + (gamma-1)/(2 gamma) y^2]
//! psi_ext   = nu x^2 - (1-nu) log CDF(x)          (CDF = Q or G)
//! psi_face  = H(nu gamma)                         [+ nu gamma log 2]
//! psi_net   = psi_com - psi_int - psi_ext
//! ```
//!
//! `psi_int` is linear in `nu`, so most callers work with the rate
//! `psi_int(1, gamma)` from [`psi_int_rate`]. At `gamma = 0` the internal
//! exponent is `+inf` and `psi_net` is `-inf`; these are returned as values,
//! not errors, so maximal scans over `[0, rho]` stay total.

use crate::duals;
use crate::error::{domain, Result};
use crate::specfun::{self, entropy_unchecked as h, GaussKind, LOG2};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// The standard simplex `T^(N-1)`.
    Simplex,
    /// The cross-polytope `C^N`.
    Cross,
}

impl Family {
    pub fn cdf_kind(self) -> GaussKind {
        match self {
            Family::Simplex => GaussKind::Q,
            Family::Cross => GaussKind::G,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Simplex => "simplex",
            Family::Cross => "cross",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "simplex" | "+" | "plus" => Ok(Family::Simplex),
            "cross" | "crosspolytope" | "cross-polytope" | "pm" | "±" => Ok(Family::Cross),
            other => Err(format!("unknown family '{other}' (expected simplex or cross)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentPoint {
    pub nu: f64,
    pub gamma: f64,
}

impl ExponentPoint {
    pub fn new(nu: f64, gamma: f64) -> Result<Self> {
        if !(nu > 0.0 && nu <= 1.0) {
            return domain(format!("nu must lie in (0,1], got {nu}"));
        }
        if !(0.0..1.0).contains(&gamma) {
            return domain(format!("gamma must lie in [0,1), got {gamma}"));
        }
        Ok(ExponentPoint { nu, gamma })
    }
}

fn family_log2(family: Family) -> f64 {
    match family {
        Family::Simplex => 0.0,
        Family::Cross => LOG2,
    }
}

pub fn psi_com(family: Family, p: ExponentPoint) -> f64 {
    h(p.nu) + p.nu * h(p.gamma) + p.nu * family_log2(family)
}

/// `psi_int(1, gamma)`; `+inf` at `gamma = 0`.
pub fn psi_int_rate(gamma: f64) -> Result<f64> {
    if gamma == 0.0 {
        return Ok(f64::INFINITY);
    }
    let d = duals::solve_s_gamma(gamma)?;
    let y = d.y_gamma;
    Ok((1.0 - gamma)
        * ((y / gamma).ln() + 0.5 * (2.0 * std::f64::consts::PI).ln()
            + (gamma - 1.0) / (2.0 * gamma) * y * y))
}

pub fn psi_int(p: ExponentPoint) -> Result<f64> {
    Ok(p.nu * psi_int_rate(p.gamma)?)
}

/// `psi_nu(t) = nu t^2 - (1 - nu) log CDF(t)`, the function minimized by the external exponent.
pub fn psi_ext_objective(family: Family, nu: f64, t: f64) -> Result<f64> {
    let lc = specfun::ln_gauss_cdf(family.cdf_kind(), t)?;
    Ok(nu * t * t - (1.0 - nu) * lc)
}

pub fn psi_ext(family: Family, nu: f64) -> Result<f64> {
    let d = duals::solve_external_argmin(family, nu)?;
    psi_ext_objective(family, nu, d.argmin)
}

pub fn psi_face(family: Family, p: ExponentPoint) -> f64 {
    let u = p.nu * p.gamma;
    h(u) + u * family_log2(family)
}

pub fn psi_net(family: Family, p: ExponentPoint) -> Result<f64> {
    let int = psi_int(p)?;
    if int.is_infinite() {
        return Ok(f64::NEG_INFINITY);
    }
    let ext = if p.nu < 1.0 { psi_ext(family, p.nu)? } else { 0.0 };
    Ok(psi_com(family, p) - int - ext)
}

/// `psi_net - psi_face`, the weak-threshold objective.
pub fn psi_weak(family: Family, p: ExponentPoint) -> Result<f64> {
    Ok(psi_net(family, p)? - psi_face(family, p))
}

/// `psi_nu''` at its minimizer: `2 nu + 4 nu x_nu^2 / (1 - nu)`, the same
/// closed form for both families.
pub fn psi_ext_second_deriv(family: Family, nu: f64) -> Result<f64> {
    let x = duals::solve_external_argmin(family, nu)?.argmin;
    Ok(2.0 * nu + 4.0 * nu * x * x / (1.0 - nu))
}

/// Partial derivatives `(d/dnu, d/dgamma)` of `psi_net`, from the envelope
/// theorem applied to the two variational definitions.
pub fn psi_net_gradient(family: Family, p: ExponentPoint) -> Result<(f64, f64)> {
    let (nu, g) = (p.nu, p.gamma);
    if !(g > 0.0 && nu < 1.0) {
        return domain("gradient needs 0 < gamma and nu < 1");
    }
    let l2 = family_log2(family);
    let x = duals::solve_external_argmin(family, nu)?.argmin;
    let d_ext_nu = x * x + specfun::ln_gauss_cdf(family.cdf_kind(), x)?;
    let rate = psi_int_rate(g)?;
    let y = duals::solve_s_gamma(g)?.y_gamma;
    let d_rate_g = -rate / (1.0 - g) - (1.0 - g) * y * y / (2.0 * g * g);
    let d_com_nu = ((1.0 - nu) / nu).ln() + h(g) + l2;
    let d_com_g = nu * ((1.0 - g) / g).ln();
    Ok((d_com_nu - rate - d_ext_nu, d_com_g - nu * d_rate_g))
}

/// Partial derivatives of `psi_face`.
pub fn psi_face_gradient(family: Family, p: ExponentPoint) -> (f64, f64) {
    let u = p.nu * p.gamma;
    let dh = ((1.0 - u) / u).ln() + family_log2(family);
    (p.gamma * dh, p.nu * dh)
}

/// Per-worker memo of the one-dimensional pieces, keyed by the argument
/// rounded to a 1e-14 grid.
#[derive(Debug, Default)]
pub struct DualCache {
    ext: HashMap<(Family, i64), f64>,
    int_rate: HashMap<i64, f64>,
}

fn key(x: f64) -> i64 {
    (x * 1e14).round() as i64
}

impl DualCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn psi_ext(&mut self, family: Family, nu: f64) -> Result<f64> {
        if nu >= 1.0 {
            return Ok(0.0);
        }
        let k = (family, key(nu));
        if let Some(&v) = self.ext.get(&k) {
            return Ok(v);
        }
        let v = psi_ext(family, nu)?;
        self.ext.insert(k, v);
        Ok(v)
    }

    pub fn psi_int_rate(&mut self, gamma: f64) -> Result<f64> {
        let k = key(gamma);
        if let Some(&v) = self.int_rate.get(&k) {
            return Ok(v);
        }
        let v = psi_int_rate(gamma)?;
        self.int_rate.insert(k, v);
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.ext.len() + self.int_rate.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
