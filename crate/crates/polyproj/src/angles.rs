//! Internal and external angles of the simplex and cross-polytope, exact
//! face counts, and the expected number of faces lost under projection.
//!
//! External angles are one-dimensional integrals,
//!
//! ```text
//! alpha = sqrt((l+1)/pi) * int exp(-(l+1) x^2) CDF(x)^(N-l-1) dx
//! ```
//!
//! over the whole line for the simplex (`CDF = Q`) and over `[0, inf)` for
//! the cross-polytope (`CDF = G`). The half-line variant of the simplex
//! integral is exposed separately as [`external_angle_half_line`].
//!
//! Internal angles `beta(T^k, T^l)` come either from the oscillatory
//! integral
//!
//! ```text
//! beta = sqrt(l+1) 2^-m / sqrt(2 pi) * int Re[exp(-(k+1) w^2/2) phi(w)^m] dw,
//! phi(w) = exp(-w^2/2) + i (2/sqrt(pi)) D(w/sqrt(2)),    m = l - k,
//! ```
//!
//! with `D` the Dawson integral, or from its saddlepoint approximation.

use crate::duals;
use crate::error::{Error, Result};
use crate::exponents::Family;
use crate::quad::{self, QuadOptions};
use crate::specfun::{self, dawson, GaussKind};
use num_bigint::BigUint;
use std::f64::consts::PI;

/// `ln(1e18)`: integrands are truncated where they fall below `1e-18` of the peak.
const TRUNCATION: f64 = 41.446_531_673_892_82;
const IMAG_TOL: f64 = 1e-10;
/// Smallest oscillatory integral the oracle reports.
const ORACLE_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleKind {
    /// `alpha(T^l, T^(N-1))`.
    ExternalSimplex { ell: usize, n_total: usize },
    /// `alpha(F^l, C^N)`.
    ExternalCross { ell: usize, n_total: usize },
    /// `beta(T^k, T^l)`.
    Internal { k: usize, ell: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleMethod {
    Quadrature,
    /// Laplace asymptotics for external angles, saddlepoint for internal ones.
    Saddlepoint,
    /// The numerical integral treated as ground truth; the same as
    /// `Quadrature` for every kind.
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AngleRequest {
    pub kind: AngleKind,
    pub method: AngleMethod,
}

impl AngleRequest {
    pub fn new(kind: AngleKind, method: AngleMethod) -> Result<Self> {
        match kind {
            AngleKind::ExternalSimplex { ell, n_total } | AngleKind::ExternalCross { ell, n_total } => {
                if ell >= n_total {
                    return Err(Error::Invalid(format!("external angle needs l < N, got l={ell}, N={n_total}")));
                }
            }
            AngleKind::Internal { k, ell } => {
                if k >= ell {
                    return Err(Error::Invalid(format!("internal angle needs k < l, got k={k}, l={ell}")));
                }
            }
        }
        Ok(AngleRequest { kind, method })
    }
}

/// Parameters of the internal-angle integral for `beta(T^k, T^l)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InternalAngleParams {
    /// `l - k`, the power of `phi`.
    pub m: usize,
    /// `k + 1`, the Gaussian weight.
    pub theta: usize,
    /// `(k + 1)/(l + 1)`.
    pub gamma: f64,
}

impl InternalAngleParams {
    pub fn new(k: usize, ell: usize) -> Result<Self> {
        if k >= ell {
            return Err(Error::Invalid(format!("internal angle needs k < l, got k={k}, l={ell}")));
        }
        Ok(InternalAngleParams { m: ell - k, theta: k + 1, gamma: (k + 1) as f64 / (ell + 1) as f64 })
    }
}

pub fn angle(req: AngleRequest) -> Result<f64> {
    match (req.kind, req.method) {
        (AngleKind::ExternalSimplex { ell, n_total }, AngleMethod::Saddlepoint) => {
            external_angle_laplace(Family::Simplex, ell, n_total)
        }
        (AngleKind::ExternalCross { ell, n_total }, AngleMethod::Saddlepoint) => {
            external_angle_laplace(Family::Cross, ell, n_total)
        }
        (AngleKind::ExternalSimplex { ell, n_total }, _) => external_angle(Family::Simplex, ell, n_total),
        (AngleKind::ExternalCross { ell, n_total }, _) => external_angle(Family::Cross, ell, n_total),
        (AngleKind::Internal { k, ell }, AngleMethod::Saddlepoint) => internal_angle_saddlepoint(k, ell),
        (AngleKind::Internal { k, ell }, _) => internal_angle_oracle(k, ell),
    }
}

fn check_external(ell: usize, n_total: usize) -> Result<()> {
    if ell >= n_total {
        return Err(Error::Invalid(format!("external angle needs l < N, got l={ell}, N={n_total}")));
    }
    Ok(())
}

/// `ln` of the external-angle integrand and the integration range, chosen so
/// the integrand is below `1e-18` of its peak outside it.
struct ExternalIntegrand {
    weight: f64,
    power: f64,
    kind: GaussKind,
    peak_at: f64,
    peak: f64,
}

impl ExternalIntegrand {
    fn new(family: Family, ell: usize, n_total: usize, lower: Option<f64>) -> Result<Self> {
        let weight = (ell + 1) as f64;
        let power = (n_total - ell - 1) as f64;
        let kind = family.cdf_kind();
        let nu = weight / n_total as f64;
        let mut peak_at = if power == 0.0 {
            0.0
        } else {
            duals::solve_external_argmin(family, nu)?.argmin
        };
        if let Some(lo) = lower {
            peak_at = peak_at.max(lo);
        }
        let mut this = ExternalIntegrand { weight, power, kind, peak_at, peak: 0.0 };
        this.peak = this.ln_f(peak_at);
        Ok(this)
    }

    fn ln_f(&self, x: f64) -> f64 {
        let lc = if self.power == 0.0 {
            0.0
        } else {
            specfun::ln_gauss_cdf(self.kind, x).unwrap_or(f64::NEG_INFINITY)
        };
        -self.weight * x * x + self.power * lc
    }

    fn edge(&self, dir: f64, stop: Option<f64>) -> f64 {
        let step = 0.5 / self.weight.sqrt();
        let mut x = self.peak_at;
        loop {
            let next = x + dir * step;
            if let Some(s) = stop {
                if (dir < 0.0 && next <= s) || (dir > 0.0 && next >= s) {
                    return s;
                }
            }
            x = next;
            if self.ln_f(x) < self.peak - TRUNCATION {
                return x;
            }
        }
    }

    /// Returns `ln` of the integral.
    fn ln_integral(&self, lower: Option<f64>) -> Result<f64> {
        let a = self.edge(-1.0, lower);
        let b = self.edge(1.0, None);
        // Split at the peak so the panels see its location.
        let opts = QuadOptions::default();
        let g = |x: f64| (self.ln_f(x) - self.peak).exp();
        let left = quad::integrate(g, a, self.peak_at, &opts)?;
        let right = quad::integrate(g, self.peak_at, b, &opts)?;
        Ok(self.peak + (left.value + right.value).ln())
    }
}

/// `ln alpha`, accurate even where `alpha` underflows.
pub fn ln_external_angle(family: Family, ell: usize, n_total: usize) -> Result<f64> {
    check_external(ell, n_total)?;
    let lower = match family {
        Family::Simplex => None,
        Family::Cross => Some(0.0),
    };
    let f = ExternalIntegrand::new(family, ell, n_total, lower)?;
    Ok(0.5 * ((ell + 1) as f64 / PI).ln() + f.ln_integral(lower)?)
}

/// `alpha(T^l, T^(N-1))` or `alpha(F^l, C^N)`. Equals 1 for `l = N-1` on the simplex.
pub fn external_angle(family: Family, ell: usize, n_total: usize) -> Result<f64> {
    Ok(ln_external_angle(family, ell, n_total)?.exp().min(1.0))
}

/// The simplex-style integral restricted to `x >= 0`:
/// `sqrt((l+1)/pi) int_0^inf exp(-(l+1) x^2) Q(x)^(N-l-1) dx`.
///
/// This is not the external angle of the simplex, which integrates over the
/// whole line. It gives `1/2` for `l = N-1` and `3/8` for `(l, N) = (0, 2)`.
pub fn external_angle_half_line(ell: usize, n_total: usize) -> Result<f64> {
    check_external(ell, n_total)?;
    let f = ExternalIntegrand::new(Family::Simplex, ell, n_total, Some(0.0))?;
    Ok((0.5 * ((ell + 1) as f64 / PI).ln() + f.ln_integral(Some(0.0))?).exp())
}

/// Laplace approximation of the external angle,
/// `exp(-N psi_ext(nu)) / sqrt(1 + 2 x_nu^2/(1-nu))` with `nu = (l+1)/N`.
pub fn external_angle_laplace(family: Family, ell: usize, n_total: usize) -> Result<f64> {
    check_external(ell, n_total)?;
    if ell + 1 == n_total {
        return Err(Error::Invalid("Laplace approximation needs l < N-1".into()));
    }
    let nu = (ell + 1) as f64 / n_total as f64;
    let x = duals::solve_external_argmin(family, nu)?.argmin;
    let e = crate::exponents::psi_ext_objective(family, nu, x)?;
    Ok((-(n_total as f64) * e).exp() / (1.0 + 2.0 * x * x / (1.0 - nu)).sqrt())
}

fn phi_pow(w: f64, m: i32) -> (f64, f64) {
    let re = (-0.5 * w * w).exp();
    let im = 2.0 / PI.sqrt() * dawson(w / std::f64::consts::SQRT_2);
    let r = re.hypot(im).powi(m);
    let t = im.atan2(re) * m as f64;
    (r * t.cos(), r * t.sin())
}

/// `beta(T^k, T^l)` by quadrature of the oscillatory integral.
pub fn internal_angle_oracle(k: usize, ell: usize) -> Result<f64> {
    let p = InternalAngleParams::new(k, ell)?;
    let theta = p.theta as f64;
    let m = p.m as i32;
    // |phi| <= 1, so the Gaussian factor alone fixes the truncation.
    let half = (2.0 * 37.0 / theta).sqrt();
    let opts = QuadOptions { rel_tol: 1e-10, abs_tol: 1e-16, max_intervals: 4000 };
    let re = quad::integrate(|w| (-0.5 * theta * w * w).exp() * phi_pow(w, m).0, -half, half, &opts)?;
    let im = quad::integrate(|w| (-0.5 * theta * w * w).exp() * phi_pow(w, m).1, -half, half, &opts)?;
    if im.value.abs() > IMAG_TOL {
        return Err(Error::Quadrature(format!("imaginary part {:e} did not vanish", im.value)));
    }
    // The integrand is O(1) near the origin, so values near rounding level
    // are cancellation noise rather than an angle.
    if re.value < ORACLE_FLOOR || re.value < 100.0 * re.error {
        return Err(Error::Quadrature(format!(
            "internal angle ({k}, {ell}) lost to cancellation: integral {:e}, error {:e}",
            re.value, re.error
        )));
    }
    let pref = ((ell + 1) as f64).sqrt() * 2f64.powi(-m) / (2.0 * PI).sqrt();
    Ok(pref * re.value)
}

/// Saddlepoint approximation
/// `sqrt(l+1) 2^-(l-k) exp(L psi_g(z_g)) / sqrt(L psi_g''(z_g))` with
/// `L = l+1` and `g = (k+1)/(l+1)`.
pub fn internal_angle_saddlepoint(k: usize, ell: usize) -> Result<f64> {
    let p = InternalAngleParams::new(k, ell)?;
    let big_l = (ell + 1) as f64;
    let z = duals::solve_saddlepoint_z(p.gamma)?.z_gamma;
    let psi = duals::psi_gamma(p.gamma, z);
    let curv = 1.0 - z * z * p.gamma / (1.0 - p.gamma);
    if curv <= 0.0 {
        return Err(Error::Domain(format!("nonpositive curvature {curv} at gamma={}", p.gamma)));
    }
    Ok(big_l.sqrt() * 2f64.powi(-(p.m as i32)) * (big_l * psi).exp() / (big_l * curv).sqrt())
}

/// Exact face count with its natural logarithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceCount {
    pub exact: BigUint,
}

impl FaceCount {
    pub fn ln(&self) -> f64 {
        let bits = self.exact.bits();
        if bits <= 1000 {
            let mut v = 0.0f64;
            for d in self.exact.to_u64_digits().iter().rev() {
                v = v * 2f64.powi(64) + *d as f64;
            }
            return v.ln();
        }
        let shift = bits - 900;
        let top = &self.exact >> shift;
        let mut v = 0.0f64;
        for d in top.to_u64_digits().iter().rev() {
            v = v * 2f64.powi(64) + *d as f64;
        }
        v.ln() + shift as f64 * std::f64::consts::LN_2
    }
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Number of `k`-faces: `C(N, k+1)` for the simplex, `2^(k+1) C(N, k+1)` for the cross-polytope.
pub fn face_count(family: Family, k: usize, n_total: usize) -> Result<FaceCount> {
    if k >= n_total {
        return Err(Error::Invalid(format!("face dimension k={k} must be below N={n_total}")));
    }
    let c = binomial(n_total as u64, k as u64 + 1);
    let exact = match family {
        Family::Simplex => c,
        Family::Cross => c << (k + 1),
    };
    Ok(FaceCount { exact })
}

fn binom_f(n: usize, k: usize) -> f64 {
    if k > n {
        0.0
    } else {
        specfun::ln_binomial(n as u64, k as u64).exp()
    }
}

/// Internal angle of the cross-polytope at one of its `k`-faces, from the
/// angle-sum relation over the faces containing it.
pub fn beta_cross_top(k: usize, n_total: usize) -> Result<f64> {
    if k >= n_total {
        return Err(Error::Invalid(format!("need k < N, got k={k}, N={n_total}")));
    }
    let mut s = 0.0;
    for ell in k..n_total {
        let b = if ell == k { 1.0 } else { internal_angle_oracle(k, ell)? };
        let count = 2f64.powi((ell - k) as i32) * binom_f(n_total - k - 1, ell - k);
        s += count * b * external_angle(Family::Cross, ell, n_total)?;
    }
    Ok(1.0 - s)
}

/// Expected number of `k`-faces lost when projecting to `n` dimensions.
///
/// Simplex: `sum over l = n+1, n+3, ... <= N-1` of
/// `2 C(N,k+1) C(N-k-1,l-k) beta(T^k,T^l) alpha(T^l,T^(N-1))`.
/// Cross-polytope: the same sum with prefactor `2 * 2^(l+1)`, plus the term
/// `2 * 2^(k+1) C(N,k+1) beta(F^k, C^N)` when `l = N` has the right parity.
pub fn discrepancy_delta(family: Family, k: usize, n: usize, n_total: usize) -> Result<f64> {
    if !(k < n && n < n_total) {
        return Err(Error::Invalid(format!("need k < n < N, got ({k}, {n}, {n_total})")));
    }
    let fk = binom_f(n_total, k + 1);
    let mut total = 0.0;
    let mut ell = n + 1;
    while ell < n_total {
        let b = internal_angle_oracle(k, ell)?;
        let inner = binom_f(n_total - k - 1, ell - k);
        total += match family {
            Family::Simplex => 2.0 * fk * inner * b * external_angle(Family::Simplex, ell, n_total)?,
            Family::Cross => {
                2.0 * 2f64.powi(ell as i32 + 1) * fk * inner * b * external_angle(Family::Cross, ell, n_total)?
            }
        };
        ell += 2;
    }
    if family == Family::Cross && ell == n_total {
        total += 2.0 * 2f64.powi(k as i32 + 1) * fk * beta_cross_top(k, n_total)?;
    }
    Ok(total.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn request_validation() {
        assert!(AngleRequest::new(AngleKind::Internal { k: 2, ell: 2 }, AngleMethod::Oracle).is_err());
        assert!(AngleRequest::new(AngleKind::ExternalCross { ell: 4, n_total: 4 }, AngleMethod::Quadrature).is_err());
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(3, 5), BigUint::from(0u32));
    }

    #[test]
    fn face_count_log_large() {
        let f = face_count(Family::Cross, 500, 2000).unwrap();
        let expect = 501.0 * std::f64::consts::LN_2 + specfun::ln_binomial(2000, 501);
        assert!((f.ln() - expect).abs() / expect < 1e-12);
    }
}
