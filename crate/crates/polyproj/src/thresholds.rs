//! Maximal operator and phase-transition thresholds.
//!
//! `M[psi](delta, rho)` is the supremum of an exponent over the rectangle
//! `nu in [delta, 1)`, `gamma in [0, rho]`. The strong threshold is the first
//! zero of `M[psi_net]`; the weak threshold uses `psi_net - psi_face`.
//!
//! The weak objective never crosses zero: along the edge `gamma = rho` it
//! rises to touch zero and falls back. A plain sign scan never brackets that
//! point, so the weak threshold is the first `rho` at which the maximum has
//! reached zero, either strictly or by being within `TOUCH_TOL` of it with
//! the edge maximum no longer increasing. Both predicates are monotone in
//! `rho`, so bisection applies to either kind.

use crate::error::{domain, Error, Result};
use crate::exponents::{DualCache, ExponentPoint, Family};
use crate::specfun::{self, entropy_unchecked as h, Approximant, LOG2};
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;

/// Distance kept from the singular endpoints of `(0, 1)`.
pub const ENDPOINT_GUARD: f64 = 1e-6;
/// Bisection tolerance on `rho`.
pub const RHO_TOL: f64 = 1e-8;
/// How close to zero the weak maximum must be to count as touching.
pub const TOUCH_TOL: f64 = 1e-6;
/// Step of the central difference used for the edge slope.
pub const EDGE_STEP: f64 = 1e-6;
/// First step of the upward scan for a threshold bracket.
pub const SCAN_STEP: f64 = 1.0 / 256.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TransitionKind {
    /// Every face survives: zero of `M[psi_net]`.
    Strong,
    /// The typical face survives: zero of `M[psi_net - psi_face]`.
    Weak,
}

impl TransitionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TransitionKind::Strong => "strong",
            TransitionKind::Weak => "weak",
        }
    }
}

impl fmt::Display for TransitionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TransitionKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "strong" | "s" => Ok(TransitionKind::Strong),
            "weak" | "w" => Ok(TransitionKind::Weak),
            other => Err(format!("unknown kind '{other}' (expected strong or weak)")),
        }
    }
}

/// Resolution of the maximal-operator search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaximalOptions {
    /// Grid points per axis.
    pub grid: usize,
    /// Argument tolerance of the golden-section refinement.
    pub tol: f64,
}

impl Default for MaximalOptions {
    fn default() -> Self {
        MaximalOptions { grid: 64, tol: 1e-10 }
    }
}

/// Location and value of a maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub value: f64,
    pub nu: f64,
    pub gamma: f64,
}

/// Evaluates the objective through its separable form
/// `A(nu) + nu B(gamma) [- F(nu gamma)]`, memoizing the one-dimensional solves.
struct Objective<'a> {
    family: Family,
    kind: TransitionKind,
    cache: &'a mut DualCache,
}

impl Objective<'_> {
    fn eval(&mut self, nu: f64, gamma: f64) -> Result<f64> {
        if gamma <= 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        let l2 = match self.family {
            Family::Simplex => 0.0,
            Family::Cross => LOG2,
        };
        let a = h(nu) + nu * l2 - self.cache.psi_ext(self.family, nu)?;
        let b = h(gamma) - self.cache.psi_int_rate(gamma)?;
        let mut v = a + nu * b;
        if self.kind == TransitionKind::Weak {
            let u = nu * gamma;
            v -= h(u) + u * l2;
        }
        Ok(v)
    }
}

/// The objective maximized by `M` for `kind`, at a single point.
pub fn objective(family: Family, kind: TransitionKind, p: ExponentPoint) -> Result<f64> {
    let mut cache = DualCache::new();
    Objective { family, kind, cache: &mut cache }.eval(p.nu, p.gamma)
}

/// Golden-section maximization of `f` on `[a, b]`, also comparing the endpoints.
fn golden_max(mut f: impl FnMut(f64) -> Result<f64>, a: f64, b: f64, tol: f64) -> Result<(f64, f64)> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
        }
    }
    let mut best = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    for x in [a, b] {
        let v = f(x)?;
        if v > best.1 {
            best = (x, v);
        }
    }
    Ok(best)
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta < 1.0) {
        return domain(format!("delta must lie in (0,1), got {delta}"));
    }
    Ok(())
}

fn nu_range(delta: f64) -> (f64, f64) {
    let top = 1.0 - ENDPOINT_GUARD;
    (delta.min(top), top)
}

fn maximal_in(
    obj: &mut Objective<'_>,
    delta: f64,
    rho: f64,
    opts: &MaximalOptions,
) -> Result<Maximum> {
    let (nu_lo, nu_hi) = nu_range(delta);
    if rho <= 0.0 {
        return Ok(Maximum { value: f64::NEG_INFINITY, nu: nu_lo, gamma: 0.0 });
    }
    let g = opts.grid.max(2);
    let nu_at = |i: usize| nu_lo + (nu_hi - nu_lo) * i as f64 / (g - 1) as f64;
    let gamma_at = |j: usize| rho * j as f64 / g as f64;

    let mut best = (0, 1, f64::NEG_INFINITY);
    for i in 0..g {
        for j in 1..=g {
            let v = obj.eval(nu_at(i), gamma_at(j))?;
            if v > best.2 {
                best = (i, j, v);
            }
        }
    }
    let (bi, bj, mut value) = best;
    let nu_box = (nu_at(bi.saturating_sub(1)), nu_at((bi + 1).min(g - 1)));
    let gamma_box = (gamma_at(bj - 1).max(rho * 1e-12), gamma_at((bj + 1).min(g)));
    let (mut nu, mut gamma) = (nu_at(bi), gamma_at(bj));

    for _ in 0..50 {
        let before = value;
        let (n, v) = golden_max(|x| obj.eval(x, gamma), nu_box.0, nu_box.1, opts.tol)?;
        if v >= value {
            nu = n;
            value = v;
        }
        let (c, v) = golden_max(|y| obj.eval(nu, y), gamma_box.0, gamma_box.1, opts.tol)?;
        if v >= value {
            gamma = c;
            value = v;
        }
        if value - before <= 1e-15 * value.abs().max(1.0) {
            break;
        }
    }
    Ok(Maximum { value, nu, gamma })
}

/// `M[objective](delta, rho)` with default resolution. `-inf` at `rho = 0`.
pub fn maximal(family: Family, kind: TransitionKind, delta: f64, rho: f64) -> Result<f64> {
    Ok(maximal_with(family, kind, delta, rho, &MaximalOptions::default())?.value)
}

pub fn maximal_with(
    family: Family,
    kind: TransitionKind,
    delta: f64,
    rho: f64,
    opts: &MaximalOptions,
) -> Result<Maximum> {
    check_delta(delta)?;
    if !(0.0..1.0).contains(&rho) {
        return domain(format!("rho must lie in [0,1), got {rho}"));
    }
    let mut cache = DualCache::new();
    let mut obj = Objective { family, kind, cache: &mut cache };
    maximal_in(&mut obj, delta, rho, opts)
}

/// `max over nu` of the objective on the edge `gamma = rho`.
fn edge_max(obj: &mut Objective<'_>, delta: f64, rho: f64, opts: &MaximalOptions) -> Result<f64> {
    let (nu_lo, nu_hi) = nu_range(delta);
    let g = opts.grid.max(2);
    let mut best = (0, f64::NEG_INFINITY);
    for i in 0..g {
        let nu = nu_lo + (nu_hi - nu_lo) * i as f64 / (g - 1) as f64;
        let v = obj.eval(nu, rho)?;
        if v > best.1 {
            best = (i, v);
        }
    }
    let step = (nu_hi - nu_lo) / (g - 1) as f64;
    let a = (nu_lo + step * best.0 as f64 - step).max(nu_lo);
    let b = (nu_lo + step * best.0 as f64 + step).min(nu_hi);
    Ok(golden_max(|x| obj.eval(x, rho), a, b, opts.tol)?.1)
}

fn reached(
    obj: &mut Objective<'_>,
    delta: f64,
    rho: f64,
    opts: &MaximalOptions,
) -> Result<bool> {
    let m = maximal_in(obj, delta, rho, opts)?.value;
    if m >= 0.0 {
        return Ok(true);
    }
    if obj.kind == TransitionKind::Strong || m <= -TOUCH_TOL {
        return Ok(false);
    }
    let lo = (rho - EDGE_STEP).max(0.0);
    let hi = rho + EDGE_STEP;
    let slope = (edge_max(obj, delta, hi, opts)? - edge_max(obj, delta, lo, opts)?) / (hi - lo);
    Ok(slope <= 0.0)
}

/// First zero of `M` in `rho`, at default resolution.
pub fn rho_threshold(family: Family, kind: TransitionKind, delta: f64) -> Result<f64> {
    rho_threshold_with(family, kind, delta, &MaximalOptions::default())
}

pub fn rho_threshold_with(
    family: Family,
    kind: TransitionKind,
    delta: f64,
    opts: &MaximalOptions,
) -> Result<f64> {
    check_delta(delta)?;
    let mut cache = DualCache::new();
    let mut obj = Objective { family, kind, cache: &mut cache };
    let top = 1.0 - ENDPOINT_GUARD;

    let mut lo;
    let mut hi = SCAN_STEP;
    if reached(&mut obj, delta, hi, opts)? {
        // Back off toward zero until the predicate fails.
        loop {
            let cand = 0.5 * hi;
            if cand < 1e-300 {
                return Err(Error::Bracket { what: "rho threshold", lo: 0.0, hi });
            }
            if reached(&mut obj, delta, cand, opts)? {
                hi = cand;
            } else {
                lo = cand;
                break;
            }
        }
    } else {
        loop {
            lo = hi;
            if lo >= top {
                return Err(Error::Bracket { what: "rho threshold", lo: SCAN_STEP, hi: top });
            }
            hi = (hi + SCAN_STEP).min(top);
            if reached(&mut obj, delta, hi, opts)? {
                break;
            }
        }
    }
    while hi - lo > RHO_TOL {
        let mid = 0.5 * (lo + hi);
        if reached(&mut obj, delta, mid, opts)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Small-delta comparison curves: `1/|2 log delta|` (weak), and
/// `1/|2e log(2 delta sqrt(pi))|` or `1/|2e log(delta sqrt(pi))|` (strong).
pub fn asymptotic_rho(family: Family, kind: TransitionKind, delta: f64) -> Result<f64> {
    let (which, tau) = match (kind, family) {
        (TransitionKind::Weak, _) => (Approximant::RWeak, 2.0),
        (TransitionKind::Strong, Family::Simplex) => (Approximant::RStrongPlus, 2.0 * std::f64::consts::E),
        (TransitionKind::Strong, Family::Cross) => (Approximant::RStrongPm, 2.0 * std::f64::consts::E),
    };
    let arg = match (kind, family) {
        (TransitionKind::Weak, _) => delta,
        (TransitionKind::Strong, Family::Simplex) => 2.0 * delta * std::f64::consts::PI.sqrt(),
        (TransitionKind::Strong, Family::Cross) => delta * std::f64::consts::PI.sqrt(),
    };
    if !(delta > 0.0 && arg < 1.0) {
        return domain(format!("asymptotic curve needs a log argument in (0,1); delta = {delta}"));
    }
    specfun::approximant(which, delta, Some(tau))
}

/// Threshold samples over a grid of `delta`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseCurve {
    pub family: Family,
    pub kind: TransitionKind,
    /// `(delta, rho)` pairs, both strictly increasing.
    pub samples: Vec<(f64, f64)>,
}

impl PhaseCurve {
    /// Packages samples, checking ordering and range.
    pub fn new(family: Family, kind: TransitionKind, samples: Vec<(f64, f64)>) -> Result<Self> {
        for w in samples.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::Invalid(format!("deltas not increasing at {}", w[1].0)));
            }
            if !(w[1].1 > w[0].1) {
                return Err(Error::Invalid(format!(
                    "rho not increasing between delta {} and {}",
                    w[0].0, w[1].0
                )));
            }
        }
        if let Some(&(d, r)) = samples.iter().find(|(_, r)| !(*r > 0.0 && *r < 1.0)) {
            return Err(Error::Invalid(format!("rho = {r} at delta = {d} is outside (0,1)")));
        }
        Ok(PhaseCurve { family, kind, samples })
    }
}

/// Thresholds at every grid point, solved in parallel.
pub fn phase_curve(family: Family, kind: TransitionKind, delta_grid: &[f64]) -> Result<PhaseCurve> {
    let samples = delta_grid
        .par_iter()
        .map(|&d| rho_threshold(family, kind, d).map(|r| (d, r)))
        .collect::<Result<Vec<_>>>()?;
    PhaseCurve::new(family, kind, samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_rho_is_sentinel() {
        let m = maximal(Family::Simplex, TransitionKind::Strong, 0.5, 0.0).unwrap();
        assert_eq!(m, f64::NEG_INFINITY);
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("Weak".parse::<TransitionKind>().unwrap(), TransitionKind::Weak);
        assert!("medium".parse::<TransitionKind>().is_err());
    }

    #[test]
    fn rejects_bad_delta() {
        assert!(rho_threshold(Family::Cross, TransitionKind::Weak, 0.0).is_err());
        assert!(maximal(Family::Cross, TransitionKind::Weak, 1.0, 0.1).is_err());
    }
}
