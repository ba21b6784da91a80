//! Dense two-phase revised simplex for `min c^T x` subject to `A x = b`, `x >= 0`.
//!
//! The basis inverse is kept explicitly, updated by rank-one pivots and
//! rebuilt from an LU factorization every [`REFACTOR_EVERY`] pivots. Rows are
//! sign-normalized so `b >= 0` and scaled to unit infinity norm, which makes
//! the absolute tolerances below meaningful. Pricing is Dantzig's rule;
//! after [`STALL_LIMIT`] consecutive degenerate pivots the phase switches to
//! Bland's rule, which cannot cycle.
//!
//! [`solve_p1`] and [`solve_lp_nonneg`] build the two recovery programs used
//! by the experiments.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};

pub const FEAS_TOL: f64 = 1e-9;
pub const OPT_TOL: f64 = 1e-9;
pub const UNIQ_TOL: f64 = 1e-8;
pub const PIVOT_TOL: f64 = 1e-9;
pub const STALL_LIMIT: usize = 500;
pub const REFACTOR_EVERY: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct LpInstance {
    pub costs: DVector<f64>,
    pub a: DMatrix<f64>,
    pub rhs: DVector<f64>,
}

impl LpInstance {
    pub fn new(costs: DVector<f64>, a: DMatrix<f64>, rhs: DVector<f64>) -> Result<Self> {
        let (r, m) = a.shape();
        if costs.len() != m || rhs.len() != r {
            return Err(Error::Invalid(format!(
                "shape mismatch: A is {r}x{m}, costs {}, rhs {}",
                costs.len(),
                rhs.len()
            )));
        }
        if r > m {
            return Err(Error::Invalid(format!("more rows ({r}) than columns ({m})")));
        }
        if a.iter().chain(costs.iter()).chain(rhs.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Invalid("non-finite entry".into()));
        }
        Ok(LpInstance { costs, a, rhs })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Uniqueness {
    CertifiedUnique,
    PossiblyNonUnique,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Primal solution; empty unless optimal.
    pub x: Vec<f64>,
    pub objective: f64,
    /// Basic structural columns, in row order of the final basis.
    pub basis: Vec<usize>,
    pub unique: Uniqueness,
    /// Multipliers for the original (unscaled) rows; empty unless optimal.
    pub duals: Vec<f64>,
    pub iterations: usize,
}

impl LpSolution {
    fn status_only(status: LpStatus, iterations: usize) -> Self {
        LpSolution {
            status,
            x: Vec::new(),
            objective: match status {
                LpStatus::Unbounded => f64::NEG_INFINITY,
                _ => f64::NAN,
            },
            basis: Vec::new(),
            unique: Uniqueness::PossiblyNonUnique,
            duals: Vec::new(),
            iterations,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    pub fn is_unique(&self) -> bool {
        self.unique == Uniqueness::CertifiedUnique
    }
}

/// Working state over the scaled problem `[A | I]` with `R` artificial columns.
struct Simplex {
    a: DMatrix<f64>,
    b: DVector<f64>,
    rows: usize,
    cols: usize,
    basis: Vec<usize>,
    binv: DMatrix<f64>,
    xb: DVector<f64>,
    iterations: usize,
    since_refactor: usize,
    max_iter: usize,
}

enum PhaseEnd {
    Optimal,
    Unbounded,
}

impl Simplex {
    fn column(&self, j: usize) -> DVector<f64> {
        if j < self.cols {
            self.a.column(j).into_owned()
        } else {
            let mut e = DVector::zeros(self.rows);
            e[j - self.cols] = 1.0;
            e
        }
    }

    fn refactor(&mut self) -> Result<()> {
        let mut bm = DMatrix::zeros(self.rows, self.rows);
        for (i, &j) in self.basis.iter().enumerate() {
            bm.set_column(i, &self.column(j));
        }
        self.binv = bm
            .lu()
            .try_inverse()
            .ok_or_else(|| Error::Lp(format!("singular basis {:?}", self.basis)))?;
        self.xb = &self.binv * &self.b;
        self.since_refactor = 0;
        Ok(())
    }

    fn duals(&self, cost: &dyn Fn(usize) -> f64) -> DVector<f64> {
        let cb = DVector::from_iterator(self.rows, self.basis.iter().map(|&j| cost(j)));
        self.binv.tr_mul(&cb)
    }

    /// Reduced costs of structural columns.
    fn reduced(&self, y: &DVector<f64>, cost: &dyn Fn(usize) -> f64) -> DVector<f64> {
        let aty = self.a.tr_mul(y);
        DVector::from_iterator(self.cols, (0..self.cols).map(|j| cost(j) - aty[j]))
    }

    fn run_phase(&mut self, cost: &dyn Fn(usize) -> f64, allow_artificial: bool) -> Result<PhaseEnd> {
        let mut stalled = 0usize;
        let mut bland = false;
        let mut in_basis = vec![false; self.cols + self.rows];
        for &j in &self.basis {
            in_basis[j] = true;
        }
        loop {
            if self.iterations >= self.max_iter {
                return Err(Error::Lp(format!(
                    "iteration cap {} reached; basis {:?}",
                    self.max_iter, self.basis
                )));
            }
            let y = self.duals(cost);
            let d = self.reduced(&y, cost);
            let mut entering: Option<(usize, f64)> = None;
            let candidates = self.cols + if allow_artificial { self.rows } else { 0 };
            for j in 0..candidates {
                if in_basis[j] {
                    continue;
                }
                let dj = if j < self.cols { d[j] } else { cost(j) - y[j - self.cols] };
                if dj < -OPT_TOL {
                    if bland {
                        entering = Some((j, dj));
                        break;
                    }
                    if entering.is_none_or(|(_, best)| dj < best) {
                        entering = Some((j, dj));
                    }
                }
            }
            let Some((q, _)) = entering else {
                return Ok(PhaseEnd::Optimal);
            };
            let u = &self.binv * self.column(q);
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                if u[i] <= PIVOT_TOL {
                    continue;
                }
                let ratio = self.xb[i].max(0.0) / u[i];
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((r, best)) => {
                        let tie = (ratio - best).abs() <= 1e-12 * best.max(1.0);
                        let better = if tie {
                            if bland {
                                self.basis[i] < self.basis[r]
                            } else {
                                u[i] > u[r]
                            }
                        } else {
                            ratio < best
                        };
                        if better { Some((i, ratio)) } else { Some((r, best)) }
                    }
                };
            }
            let Some((r, theta)) = leave else {
                return Ok(PhaseEnd::Unbounded);
            };
            if theta <= 1e-12 {
                stalled += 1;
                if stalled >= STALL_LIMIT {
                    bland = true;
                }
            } else {
                stalled = 0;
            }
            let left = self.pivot(r, q, &u, theta);
            in_basis[q] = true;
            in_basis[left] = false;
            self.iterations += 1;
            self.since_refactor += 1;
            if self.since_refactor >= REFACTOR_EVERY {
                self.refactor()?;
            }
        }
    }

    /// Replaces the basic variable in row `r` by column `q`; returns the leaving column.
    fn pivot(&mut self, r: usize, q: usize, u: &DVector<f64>, theta: f64) -> usize {
        self.xb.axpy(-theta, u, 1.0);
        self.xb[r] = theta;
        let row_r = (self.binv.row(r) / u[r]).transpose();
        let mut col = u.clone();
        col[r] = 0.0;
        self.binv.ger(-1.0, &col, &row_r, 1.0);
        self.binv.set_row(r, &row_r.transpose());
        std::mem::replace(&mut self.basis[r], q)
    }
}

/// Solves `min c^T x` subject to `A x = b`, `x >= 0` by the two-phase revised simplex.
///
/// Infeasible and unbounded problems are reported through
/// [`LpSolution::status`]; hitting the iteration cap or a singular refactor
/// is an error that names the current basis.
pub fn lp_solve(inst: &LpInstance) -> Result<LpSolution> {
    let (rows, cols) = inst.a.shape();
    let mut a = inst.a.clone();
    let mut b = inst.rhs.clone();
    let mut row_factor = vec![1.0; rows];
    for i in 0..rows {
        let norm = a.row(i).amax();
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        if norm == 0.0 {
            if b[i].abs() > FEAS_TOL {
                return Ok(LpSolution::status_only(LpStatus::Infeasible, 0));
            }
            b[i] = 0.0;
            continue;
        }
        let f = sign / norm;
        a.row_mut(i).scale_mut(f);
        b[i] *= f;
        row_factor[i] = f;
    }

    let mut s = Simplex {
        a,
        b: b.clone(),
        rows,
        cols,
        basis: (cols..cols + rows).collect(),
        binv: DMatrix::identity(rows, rows),
        xb: b,
        iterations: 0,
        since_refactor: 0,
        max_iter: 50 * (rows + cols) + 1000,
    };

    let phase1 = |j: usize| if j < cols { 0.0 } else { 1.0 };
    s.run_phase(&phase1, false)?;
    s.refactor()?;
    let scale = 1.0 + s.b.amax();
    let infeasibility = s
        .basis
        .iter()
        .zip(s.xb.iter())
        .filter(|(j, _)| **j >= cols)
        .fold(0.0f64, |m, (_, v)| m.max(*v));
    if infeasibility > FEAS_TOL * scale {
        return Ok(LpSolution::status_only(LpStatus::Infeasible, s.iterations));
    }

    // Pivot zero-level artificials out wherever a structural column reaches
    // their row; the rest sit on redundant rows and stay at zero.
    for r in 0..rows {
        if s.basis[r] < cols {
            continue;
        }
        let w = s.binv.row(r) * &s.a;
        let mut pick: Option<(usize, f64)> = None;
        for j in 0..cols {
            if s.basis.contains(&j) {
                continue;
            }
            if w[j].abs() > 1e-7 && pick.is_none_or(|(_, best)| w[j].abs() > best) {
                pick = Some((j, w[j].abs()));
            }
        }
        if let Some((q, _)) = pick {
            let u = &s.binv * s.column(q);
            let theta = s.xb[r] / u[r];
            s.pivot(r, q, &u, theta);
        }
    }
    s.refactor()?;

    let costs = inst.costs.clone();
    let phase2 = move |j: usize| if j < cols { costs[j] } else { 0.0 };
    if let PhaseEnd::Unbounded = s.run_phase(&phase2, false)? {
        return Ok(LpSolution::status_only(LpStatus::Unbounded, s.iterations));
    }
    s.refactor()?;

    let mut x = vec![0.0; cols];
    for (i, &j) in s.basis.iter().enumerate() {
        if j < cols {
            if s.xb[i] < -FEAS_TOL * scale {
                return Err(Error::Lp(format!(
                    "basic variable {j} at {:.3e} after refactor; basis {:?}",
                    s.xb[i], s.basis
                )));
            }
            x[j] = s.xb[i].max(0.0);
        }
    }
    let residual = (&s.a * DVector::from_column_slice(&x) - &s.b).amax();
    if residual > FEAS_TOL * scale * (1.0 + x.iter().fold(0.0f64, |m, v| m.max(*v))) {
        return Err(Error::Lp(format!("residual {residual:.3e}; basis {:?}", s.basis)));
    }

    let y = s.duals(&phase2);
    let d = s.reduced(&y, &phase2);
    let mut basic = vec![false; cols];
    for &j in &s.basis {
        if j < cols {
            basic[j] = true;
        }
    }
    let unique = if (0..cols).all(|j| basic[j] || d[j] > UNIQ_TOL) {
        Uniqueness::CertifiedUnique
    } else {
        Uniqueness::PossiblyNonUnique
    };
    let objective = inst.costs.iter().zip(&x).map(|(c, v)| c * v).sum();
    Ok(LpSolution {
        status: LpStatus::Optimal,
        x,
        objective,
        basis: s.basis.iter().copied().filter(|&j| j < cols).collect(),
        unique,
        duals: y.iter().zip(&row_factor).map(|(v, f)| v * f).collect(),
        iterations: s.iterations,
    })
}

fn check_system(a: &DMatrix<f64>, y: &[f64]) -> Result<()> {
    if a.nrows() != y.len() {
        return Err(Error::Invalid(format!("A has {} rows but y has {}", a.nrows(), y.len())));
    }
    if a.nrows() > a.ncols() {
        return Err(Error::Invalid(format!("need n <= N, got {}x{}", a.nrows(), a.ncols())));
    }
    Ok(())
}

/// `min ||x||_1` subject to `A x = y`, through the split `x = u - v`.
///
/// The returned solution lives in `x`-space: `x` has length `N`, `basis`
/// lists the coordinates whose `u` or `v` column is basic and `duals` are the
/// multipliers of `A x = y`. Since `u_i` and `v_i` have opposite columns they
/// are never basic together, and their reduced costs sum to 2, so the
/// certificate of the split program carries over unchanged.
pub fn solve_p1(a: &DMatrix<f64>, y: &[f64]) -> Result<LpSolution> {
    check_system(a, y)?;
    let (n, big_n) = a.shape();
    let mut split = DMatrix::zeros(n, 2 * big_n);
    split.columns_mut(0, big_n).copy_from(a);
    split.columns_mut(big_n, big_n).copy_from(&(-a));
    let inst = LpInstance::new(DVector::from_element(2 * big_n, 1.0), split, DVector::from_column_slice(y))?;
    let mut sol = lp_solve(&inst)?;
    if sol.is_optimal() {
        sol.x = (0..big_n).map(|i| sol.x[i] - sol.x[big_n + i]).collect();
        sol.basis = sol.basis.iter().map(|&j| j % big_n).collect();
        sol.objective = sol.x.iter().map(|v| v.abs()).sum();
    }
    Ok(sol)
}

/// `min 1^T x` subject to `A x = y`, `x >= 0`.
pub fn solve_lp_nonneg(a: &DMatrix<f64>, y: &[f64]) -> Result<LpSolution> {
    check_system(a, y)?;
    let inst = LpInstance::new(DVector::from_element(a.ncols(), 1.0), a.clone(), DVector::from_column_slice(y))?;
    lp_solve(&inst)
}

/// Indices with `|x_i| > tol`.
pub fn support(x: &[f64], tol: f64) -> Vec<usize> {
    x.iter().enumerate().filter(|(_, v)| v.abs() > tol).map(|(i, _)| i).collect()
}
