//! Explicit finite-N bounds on the number of lost faces.
//!
//! For `l` in `n+1, n+3, ..., <= N-1`, with `nu = l/N`, `gamma = k/l` and the
//! perturbed variables of [`PerturbedVars`], the per-`l` exponent is
//!
//! ```text
//! simplex: psi_com(nu, gamma) - psi_ext(nu)     - psi_int(nu~, gamma~)
//! cross:   psi_com(nu, gamma) - psi_ext(nu_hat) - psi_int(nu~, gamma~)
//! ```
//!
//! and the weak variant also subtracts `psi_face(nu, gamma)`. The bound is
//! `(N+3)^p exp(N max_l exponent)` with `p = 5` (strong) or `p = 11/2` (weak).
//! Values are carried in log space as well, since `exp(N E)` over- or
//! underflows for moderate `N`.

use crate::error::{Error, Result};
use crate::exponents::{psi_com, psi_face, DualCache, ExponentPoint, Family};
use crate::thresholds::TransitionKind;
use rayon::prelude::*;

/// `c_1 = 6 + 4 sqrt(2)`.
pub const RV_C1: f64 = 6.0 + 4.0 * std::f64::consts::SQRT_2;
/// `c_3 = e^(3/2)`.
pub const RV_C3: f64 = 4.481_689_070_338_065;
pub const RV_CEILING: f64 = 3.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TripleKNN {
    pub k: usize,
    pub n: usize,
    pub big_n: usize,
}

impl TripleKNN {
    pub fn new(k: usize, n: usize, big_n: usize) -> Result<Self> {
        if !(k >= 1 && k < n && n < big_n) {
            return Err(Error::Invalid(format!("need 1 <= k < n < N, got ({k}, {n}, {big_n})")));
        }
        Ok(TripleKNN { k, n, big_n })
    }

    /// `n+1, n+3, ...` up to `N-1`.
    pub fn ells(&self) -> impl Iterator<Item = usize> {
        (self.n + 1..self.big_n).step_by(2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbedVars {
    /// `l/N`.
    pub nu: f64,
    /// `k/l`.
    pub gamma: f64,
    /// `nu + 1/(2N)`.
    pub nu_hat: f64,
    /// `(l+2)/N`; exceeds 1 at `l = N-1`, where only the linear internal
    /// exponent uses it.
    pub nu_tilde: f64,
    /// `(k+1)/(l+2)`.
    pub gamma_tilde: f64,
}

impl PerturbedVars {
    pub fn new(k: usize, ell: usize, big_n: usize) -> Result<Self> {
        if !(k < ell && ell < big_n) {
            return Err(Error::Invalid(format!("need k < l < N, got ({k}, {ell}, {big_n})")));
        }
        let nn = big_n as f64;
        let nu = ell as f64 / nn;
        Ok(PerturbedVars {
            nu,
            gamma: k as f64 / ell as f64,
            nu_hat: nu + 0.5 / nn,
            nu_tilde: (ell + 2) as f64 / nn,
            gamma_tilde: (k + 1) as f64 / (ell + 2) as f64,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundValue {
    pub value: f64,
    pub ln_value: f64,
    /// The `l` attaining the maximal exponent; `None` for an empty range.
    pub ell: Option<usize>,
    pub exponent: f64,
}

impl BoundValue {
    fn empty() -> Self {
        BoundValue { value: 0.0, ln_value: f64::NEG_INFINITY, ell: None, exponent: f64::NEG_INFINITY }
    }
}

/// Per-`l` exponent of the strong or weak bound.
pub fn ell_exponent(
    family: Family,
    kind: TransitionKind,
    k: usize,
    ell: usize,
    big_n: usize,
    cache: &mut DualCache,
) -> Result<f64> {
    let v = PerturbedVars::new(k, ell, big_n)?;
    let p = ExponentPoint::new(v.nu, v.gamma)?;
    let ext = match family {
        Family::Simplex => cache.psi_ext(family, v.nu)?,
        Family::Cross => cache.psi_ext(family, v.nu_hat)?,
    };
    let int = v.nu_tilde * cache.psi_int_rate(v.gamma_tilde)?;
    let mut e = psi_com(family, p) - ext - int;
    if kind == TransitionKind::Weak {
        e -= psi_face(family, p);
    }
    Ok(e)
}

fn bound_with(family: Family, kind: TransitionKind, t: TripleKNN, cache: &mut DualCache) -> Result<BoundValue> {
    let mut best = BoundValue::empty();
    for ell in t.ells() {
        let e = ell_exponent(family, kind, t.k, ell, t.big_n, cache)?;
        if e > best.exponent {
            best.exponent = e;
            best.ell = Some(ell);
        }
    }
    if best.ell.is_none() {
        return Ok(best);
    }
    let nn = t.big_n as f64;
    let power = match kind {
        TransitionKind::Strong => 5.0,
        TransitionKind::Weak => 5.5,
    };
    best.ln_value = power * (nn + 3.0).ln() + nn * best.exponent;
    best.value = best.ln_value.exp();
    Ok(best)
}

/// Upper bound on `f_k(Q) - E f_k(AQ)`. Zero when no `l` is admissible.
pub fn strong_bound(family: Family, t: TripleKNN) -> Result<BoundValue> {
    bound_with(family, TransitionKind::Strong, t, &mut DualCache::new())
}

/// `B` with `E f_k(AQ) / f_k(Q) >= 1 - B`. Zero when no `l` is admissible.
pub fn weak_bound(family: Family, t: TripleKNN) -> Result<BoundValue> {
    bound_with(family, TransitionKind::Weak, t, &mut DualCache::new())
}

pub fn bound(family: Family, kind: TransitionKind, t: TripleKNN) -> Result<BoundValue> {
    bound_with(family, kind, t, &mut DualCache::new())
}

/// Level set `bound(k, n, N) = level` as `rho = k/n` over a grid of `delta = n/N`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelCurve {
    pub family: Family,
    pub kind: TransitionKind,
    pub big_n: usize,
    pub level: f64,
    /// `(delta, rho)`; `rho = 0` where even `k = 1` exceeds the level.
    pub samples: Vec<(f64, f64)>,
}

/// Largest `k/n`, with `n = ceil(delta N)`, whose bound stays at or below `level`.
pub fn level_curve(
    family: Family,
    kind: TransitionKind,
    big_n: usize,
    level: f64,
    delta_grid: &[f64],
) -> Result<LevelCurve> {
    if !(level > 0.0) {
        return Err(Error::Invalid(format!("level must be positive, got {level}")));
    }
    if let Some(d) = delta_grid.iter().find(|d| !(**d > 0.0 && **d < 1.0)) {
        return Err(Error::Invalid(format!("delta {d} outside (0,1)")));
    }
    let ln_level = level.ln();
    let samples = delta_grid
        .par_iter()
        .map(|&delta| {
            let n = ((delta * big_n as f64).ceil() as usize).min(big_n - 1);
            let mut cache = DualCache::new();
            let mut best = 0;
            for k in 1..n {
                let t = TripleKNN::new(k, n, big_n)?;
                let b = bound_with(family, kind, t, &mut cache)?;
                if b.ln_value <= ln_level {
                    best = k;
                } else {
                    break;
                }
            }
            Ok((delta, if n == 0 { 0.0 } else { best as f64 / n as f64 }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LevelCurve { family, kind, big_n, level, samples })
}

/// `3.5 exp(-(sqrt(n) - sqrt(m))^2 / 18)` with `m = c_1 k log(c_3 N / k)`;
/// the vacuous `3.5` once `sqrt(n) <= sqrt(m)`.
///
/// The published bound carries an extra `o(1)` in `m`; setting it to zero
/// makes this a lower bound on the published value.
pub fn rv_bound(k: usize, n: usize, big_n: usize) -> Result<f64> {
    let t = TripleKNN::new(k, n, big_n)?;
    let m = RV_C1 * t.k as f64 * (RV_C3 * t.big_n as f64 / t.k as f64).ln();
    let gap = (t.n as f64).sqrt() - m.sqrt();
    if gap <= 0.0 {
        return Ok(RV_CEILING);
    }
    Ok(RV_CEILING * (-gap * gap / 18.0).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triple_validation() {
        assert!(TripleKNN::new(0, 5, 10).is_err());
        assert!(TripleKNN::new(5, 5, 10).is_err());
        assert!(TripleKNN::new(1, 10, 10).is_err());
        assert_eq!(TripleKNN::new(2, 5, 10).unwrap().ells().collect::<Vec<_>>(), vec![6, 8]);
    }

    #[test]
    fn empty_range_is_zero() {
        let t = TripleKNN::new(1, 2, 3).unwrap();
        assert_eq!(strong_bound(Family::Simplex, t).unwrap().value, 0.0);
        assert_eq!(weak_bound(Family::Cross, t).unwrap().value, 0.0);
    }
}
