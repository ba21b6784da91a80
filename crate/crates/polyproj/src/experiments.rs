//! Seeded Monte Carlo experiments on random projections.
//!
//! Every random draw goes through a [`ChaCha8Rng`] seeded from a 64-bit value;
//! per-trial seeds come from [`derive_seed`], a splitmix hash of the master
//! seed and the trial coordinates, so results do not depend on how rayon
//! schedules the work.
//!
//! Two face tests live here. [`face_survival_trial`] is the recovery protocol:
//! plant a sparse `x0`, solve the nonnegative program (simplex) or the `l1`
//! program (cross-polytope) and ask whether `x0` comes back with a uniqueness
//! certificate. [`face_survives`] is the exact geometric test used for face
//! counts and neighborliness: the projected face survives iff no point of the
//! polytope other than those on the face maps to the face's barycenter image.

use crate::error::{Error, Result};
use crate::exponents::Family;
use crate::linprog::{lp_solve, solve_lp_nonneg, solve_p1, LpInstance, LpStatus};
use crate::thresholds::{rho_threshold, TransitionKind};
use nalgebra::{DMatrix, DVector};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use std::io::Write;

pub const DEFAULT_SUCCESS_TOL: f64 = 1e-6;
/// Largest off-face mass still counted as zero by [`face_survives`].
pub const FACE_MASS_TOL: f64 = 1e-9;
/// Work budget for exhaustive neighborliness sweeps.
pub const NEIGHBORLY_BUDGET: u64 = 100_000;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-based seed for the stream at `path` below `master`.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    path.iter().fold(splitmix(master), |acc, &p| splitmix(acc ^ splitmix(p)))
}

/// `n x N` matrix of iid `N(0, 1/n)` entries.
pub fn gaussian_matrix(n: usize, big_n: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, 1.0 / (n.max(1) as f64).sqrt()).expect("positive sd");
    // Row-major fill so the stream order matches how the matrix is printed.
    DMatrix::from_row_iterator(n, big_n, (0..n * big_n).map(|_| normal.sample(&mut rng)))
}

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
/// diagonal of `R` made positive.
pub fn haar_orthogonal(big_n: usize, seed: u64) -> DMatrix<f64> {
    let g = gaussian_matrix(big_n, big_n, seed);
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..big_n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// `k`-sparse vector with uniformly random support and entries `+-1`
/// (`signed`) or `+1`.
pub fn sparse_vector(big_n: usize, k: usize, signed: bool, seed: u64) -> Result<Vec<f64>> {
    if k > big_n {
        return Err(Error::Invalid(format!("k = {k} exceeds N = {big_n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = vec![0.0; big_n];
    for i in index::sample(&mut rng, big_n, k) {
        x[i] = if signed && rng.random::<bool>() { -1.0 } else { 1.0 };
    }
    Ok(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialOutcome {
    /// `x0` recovered with a uniqueness certificate.
    Success,
    /// `x0` recovered but the certificate is inconclusive.
    Ambiguous,
    Failure,
    /// The solver itself failed.
    Error,
}

fn sup_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Plants a `k`-sparse `x0` (nonnegative for the simplex, signed for the
/// cross-polytope), solves from `y = A x0` and classifies the outcome.
pub fn face_survival_trial(family: Family, a: &DMatrix<f64>, k: usize, seed: u64, tol: f64) -> Result<TrialOutcome> {
    let (n, big_n) = a.shape();
    if k >= n {
        return Err(Error::Invalid(format!("need k < n, got k = {k}, n = {n}")));
    }
    let x0 = sparse_vector(big_n, k, family == Family::Cross, seed)?;
    let y: Vec<f64> = (a * DVector::from_column_slice(&x0)).iter().copied().collect();
    let sol = match family {
        Family::Simplex => solve_lp_nonneg(a, &y),
        Family::Cross => solve_p1(a, &y),
    };
    let Ok(sol) = sol else { return Ok(TrialOutcome::Error) };
    if sol.status != LpStatus::Optimal {
        return Ok(TrialOutcome::Error);
    }
    let diff: Vec<f64> = sol.x.iter().zip(&x0).map(|(p, q)| p - q).collect();
    if sup_norm(&diff) > tol * sup_norm(&x0).max(1.0) {
        return Ok(TrialOutcome::Failure);
    }
    Ok(if sol.is_unique() { TrialOutcome::Success } else { TrialOutcome::Ambiguous })
}

/// A face given by its vertices: `(coordinate, sign)` with sign `+1` for the
/// simplex and `+-1` for the cross-polytope.
pub type FaceSpec = [(usize, f64)];

/// Exact test that the image of a face is a face of the projected polytope
/// of the same dimension.
///
/// With `b` the face barycenter, the face survives iff its vertex images are
/// affinely independent and the largest weight that a representation
/// `A x = A b` over the polytope can put off the face is zero.
pub fn face_survives(family: Family, a: &DMatrix<f64>, face: &FaceSpec) -> Result<bool> {
    let (n, big_n) = a.shape();
    if face.is_empty() || face.iter().any(|&(i, s)| i >= big_n || s.abs() != 1.0) {
        return Err(Error::Invalid(format!("bad face {face:?} for N = {big_n}")));
    }
    if family == Family::Simplex && face.iter().any(|&(_, s)| s < 0.0) {
        return Err(Error::Invalid("simplex faces have positive vertices".into()));
    }
    let m = face.len();
    let mut verts = DMatrix::zeros(n + 1, m);
    for (c, &(i, s)) in face.iter().enumerate() {
        for r in 0..n {
            verts[(r, c)] = s * a[(r, i)];
        }
        verts[(n, c)] = 1.0;
    }
    let sv = verts.singular_values();
    if sv.min() <= 1e-10 * sv.max().max(1.0) || m > n + 1 {
        return Ok(false);
    }
    // Columns: simplex vertices e_i, or cross vertices +e_i then -e_i.
    let cols = match family {
        Family::Simplex => big_n,
        Family::Cross => 2 * big_n,
    };
    if n + 1 > cols {
        return Err(Error::Invalid(format!("the fiber program needs n < N, got n = {n}")));
    }
    let mut lp = DMatrix::zeros(n + 1, cols);
    for j in 0..cols {
        let (i, s) = if j < big_n { (j, 1.0) } else { (j - big_n, -1.0) };
        for r in 0..n {
            lp[(r, j)] = s * a[(r, i)];
        }
        lp[(n, j)] = 1.0;
    }
    let mut rhs = DVector::zeros(n + 1);
    for &(i, s) in face {
        for r in 0..n {
            rhs[r] += s * a[(r, i)] / m as f64;
        }
    }
    rhs[n] = 1.0;
    let on_face = |j: usize| face.iter().any(|&(i, s)| (j < big_n && i == j && s > 0.0) || (j >= big_n && i == j - big_n && s < 0.0));
    let costs = DVector::from_fn(cols, |j, _| if on_face(j) { 0.0 } else { -1.0 });
    let sol = lp_solve(&LpInstance::new(costs, lp, rhs)?)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Lp(format!("fiber program ended {:?}", sol.status)));
    }
    Ok(-sol.objective <= FACE_MASS_TOL)
}

fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> Result<bool>) -> Result<bool> {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return Ok(true);
    }
    loop {
        if !f(&idx)? {
            return Ok(false);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(true);
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn face_work(family: Family, dim: usize, big_n: usize) -> u64 {
    let c = crate::angles::binomial(big_n as u64, dim as u64 + 1);
    let signs = match family {
        Family::Simplex => 1u64,
        Family::Cross => 1u64 << (dim + 1).min(63),
    };
    u64::try_from(c * signs).unwrap_or(u64::MAX)
}

/// Visits every face of dimension `dim` until `f` returns `false`.
fn sweep_faces(family: Family, big_n: usize, dim: usize, mut f: impl FnMut(&[(usize, f64)]) -> Result<bool>) -> Result<bool> {
    let m = dim + 1;
    for_each_subset(big_n, m, |support| {
        let patterns: u64 = if family == Family::Cross { 1 << m } else { 1 };
        for mask in 0..patterns {
            let face: Vec<(usize, f64)> = support
                .iter()
                .enumerate()
                .map(|(b, &i)| (i, if mask >> b & 1 == 1 { -1.0 } else { 1.0 }))
                .collect();
            if !f(&face)? {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NeighborlyMode {
    Exhaustive,
    Sampled { trials: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Neighborliness {
    /// Every face of dimension `<= k` survives.
    Certified(usize),
    FailedAtFace { dim: usize, vertices: Vec<(usize, f64)> },
    SampledPass { rate: f64, trials: usize },
}

/// Checks that every `k`-face (and every lower face) of the simplex or
/// cross-polytope survives projection by `A`.
///
/// The exhaustive sweep visits the top dimension first, so a failure is
/// reported at the largest failing face dimension.
pub fn neighborliness_check(family: Family, a: &DMatrix<f64>, k: usize, mode: NeighborlyMode) -> Result<Neighborliness> {
    let big_n = a.ncols();
    if k + 1 > big_n {
        return Err(Error::Invalid(format!("k = {k} needs at least k+1 columns")));
    }
    match mode {
        NeighborlyMode::Exhaustive => {
            let work: u64 = (0..=k).map(|d| face_work(family, d, big_n)).fold(0u64, u64::saturating_add);
            if work > NEIGHBORLY_BUDGET {
                return Err(Error::Budget(format!("{work} faces exceed the budget of {NEIGHBORLY_BUDGET}")));
            }
            for dim in (0..=k).rev() {
                let mut failed = None;
                sweep_faces(family, big_n, dim, |face| {
                    if face_survives(family, a, face)? {
                        Ok(true)
                    } else {
                        failed = Some(face.to_vec());
                        Ok(false)
                    }
                })?;
                if let Some(vertices) = failed {
                    return Ok(Neighborliness::FailedAtFace { dim, vertices });
                }
            }
            Ok(Neighborliness::Certified(k))
        }
        NeighborlyMode::Sampled { trials, seed } => {
            if trials == 0 {
                return Err(Error::Invalid("need at least one sampled face".into()));
            }
            let passed = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &[t as u64]));
                    let face: Vec<(usize, f64)> = index::sample(&mut rng, big_n, k + 1)
                        .into_iter()
                        .map(|i| (i, if family == Family::Cross && rng.random::<bool>() { -1.0 } else { 1.0 }))
                        .collect();
                    face_survives(family, a, &face)
                })
                .collect::<Result<Vec<bool>>>()?;
            let rate = passed.iter().filter(|p| **p).count() as f64 / trials as f64;
            Ok(Neighborliness::SampledPass { rate, trials })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub trials: usize,
}

/// Monte Carlo estimate of the expected number of `k`-faces of `A Q` for
/// Gaussian `n x N` matrices.
pub fn mc_face_count(family: Family, k: usize, n: usize, big_n: usize, trials: usize, seed: u64) -> Result<McEstimate> {
    if big_n > 12 || k >= big_n || n == 0 || trials == 0 {
        return Err(Error::Invalid(format!("need k < N <= 12, n >= 1 and trials >= 1, got ({k}, {n}, {big_n}, {trials})")));
    }
    let c = crate::angles::binomial(big_n as u64, k as u64 + 1);
    if c > 500u32.into() {
        return Err(Error::Budget(format!("C({big_n},{}) = {c} exceeds 500 faces", k + 1)));
    }
    let counts = (0..trials)
        .into_par_iter()
        .map(|t| {
            let a = gaussian_matrix(n, big_n, derive_seed(seed, &[t as u64]));
            if n >= big_n {
                // An injective map keeps every face; confirm injectivity.
                let sv = a.singular_values();
                if sv.min() <= 1e-10 * sv.max() {
                    return Err(Error::Lp("rank-deficient draw with n >= N".into()));
                }
                return Ok(face_work(family, k, big_n) as f64);
            }
            let mut count = 0u64;
            sweep_faces(family, big_n, k, |face| {
                if face_survives(family, &a, face)? {
                    count += 1;
                }
                Ok(true)
            })?;
            Ok(count as f64)
        })
        .collect::<Result<Vec<f64>>>()?;
    let m = counts.len() as f64;
    let mean = counts.iter().sum::<f64>() / m;
    let var = if counts.len() > 1 { counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (m - 1.0) } else { 0.0 };
    Ok(McEstimate { mean, stderr: (var / m).sqrt(), trials })
}

#[derive(Debug, Clone, PartialEq)]
pub enum KRule {
    Explicit(Vec<usize>),
    /// `round(n rho_W (0.5 + 0.1 j))` for `j = 0..=10`, clamped to `[0, n-1]`.
    AroundThreshold,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub family: Family,
    pub big_n: usize,
    pub n_list: Vec<usize>,
    pub k_rule: KRule,
    pub trials_per_cell: usize,
    pub master_seed: u64,
    pub success_tol: f64,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials_per_cell == 0 {
            return Err(Error::Invalid("trials_per_cell must be positive".into()));
        }
        if self.n_list.is_empty() || self.n_list.iter().any(|&n| n == 0 || n >= self.big_n) {
            return Err(Error::Invalid(format!("need 0 < n < N = {} for every n", self.big_n)));
        }
        if let KRule::Explicit(ks) = &self.k_rule {
            let n_min = *self.n_list.iter().min().unwrap();
            if ks.is_empty() || ks.iter().any(|&k| k >= n_min) {
                return Err(Error::Invalid(format!("need every k < n (smallest n is {n_min})")));
            }
        }
        if !(self.success_tol > 0.0) {
            return Err(Error::Invalid("success_tol must be positive".into()));
        }
        Ok(())
    }

    /// The `k` values of the cells at row `n`.
    pub fn ks_for(&self, n: usize) -> Result<Vec<usize>> {
        match &self.k_rule {
            KRule::Explicit(ks) => Ok(ks.clone()),
            KRule::AroundThreshold => {
                let rho = rho_threshold(self.family, TransitionKind::Weak, n as f64 / self.big_n as f64)?;
                let mut ks: Vec<usize> = (0..=10)
                    .map(|j| ((n as f64 * rho * (0.5 + 0.1 * j as f64)).round() as usize).min(n - 1))
                    .collect();
                ks.dedup();
                Ok(ks)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridCell {
    pub n: usize,
    pub k: usize,
    pub trials: usize,
    pub successes: usize,
    pub ambiguous: usize,
    pub errors: usize,
}

impl GridCell {
    pub fn fraction(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }

    /// Binomial standard error of [`GridCell::fraction`].
    pub fn stderr(&self) -> f64 {
        let p = self.fraction();
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridResult {
    pub family: Family,
    pub big_n: usize,
    pub cells: Vec<GridCell>,
}

impl GridResult {
    pub fn cell(&self, n: usize, k: usize) -> Option<&GridCell> {
        self.cells.iter().find(|c| c.n == n && c.k == k)
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::Io(e.to_string());
        out.write_record(["family", "N", "n", "k", "trials", "successes", "ambiguous", "errors"]).map_err(io)?;
        for c in &self.cells {
            out.write_record([
                self.family.to_string(),
                self.big_n.to_string(),
                c.n.to_string(),
                c.k.to_string(),
                c.trials.to_string(),
                c.successes.to_string(),
                c.ambiguous.to_string(),
                c.errors.to_string(),
            ])
            .map_err(io)?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Runs every `(n, k)` cell with a fresh Gaussian matrix per trial.
pub fn success_grid(cfg: &ExperimentConfig) -> Result<GridResult> {
    cfg.validate()?;
    let mut jobs = Vec::new();
    for &n in &cfg.n_list {
        for k in cfg.ks_for(n)? {
            jobs.push((n, k));
        }
    }
    let cells = jobs
        .par_iter()
        .map(|&(n, k)| {
            let outcomes = (0..cfg.trials_per_cell)
                .into_par_iter()
                .map(|t| {
                    let seed = derive_seed(cfg.master_seed, &[n as u64, k as u64, t as u64]);
                    let a = gaussian_matrix(n, cfg.big_n, derive_seed(seed, &[0]));
                    face_survival_trial(cfg.family, &a, k, derive_seed(seed, &[1]), cfg.success_tol)
                })
                .collect::<Result<Vec<_>>>()?;
            let count = |o: TrialOutcome| outcomes.iter().filter(|x| **x == o).count();
            Ok(GridCell {
                n,
                k,
                trials: outcomes.len(),
                successes: count(TrialOutcome::Success),
                ambiguous: count(TrialOutcome::Ambiguous),
                errors: count(TrialOutcome::Error),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GridResult { family: cfg.family, big_n: cfg.big_n, cells })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorModel {
    /// `k` uniformly placed errors of size `+-1`.
    RandomSigned,
    /// Errors on coordinates `0..k` with alternating signs and size 10.
    AdversarialFixedSupport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EccConfig {
    pub big_n: usize,
    pub n: usize,
    pub k: usize,
    pub error_model: ErrorModel,
    pub trials: usize,
    pub master_seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EccTrial {
    pub exact: bool,
    /// The decoder's program failed; such trials are never exact.
    pub solver_failed: bool,
}

/// Encode a Gaussian message with the orthogonal complement `B` of a random
/// checksum matrix `A`, corrupt it, decode by `l1` minimization on `A w`.
pub fn ecc_roundtrip(cfg: &EccConfig) -> Result<Vec<EccTrial>> {
    if !(cfg.n < cfg.big_n && cfg.k <= cfg.big_n && cfg.trials >= 1 && cfg.n >= 1) {
        return Err(Error::Invalid(format!(
            "need 1 <= n < N and k <= N, got N = {}, n = {}, k = {}",
            cfg.big_n, cfg.n, cfg.k
        )));
    }
    let m = cfg.big_n - cfg.n;
    (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let seed = derive_seed(cfg.master_seed, &[t as u64]);
            let u_mat = haar_orthogonal(cfg.big_n, derive_seed(seed, &[0]));
            let a = u_mat.rows(0, cfg.n).into_owned();
            let b = u_mat.rows(cfg.n, m).into_owned();
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &[1]));
            let msg = DVector::from_fn(m, |_, _| rng.sample::<f64, _>(rand_distr::StandardNormal));
            let z = match cfg.error_model {
                ErrorModel::RandomSigned => sparse_vector(cfg.big_n, cfg.k, true, derive_seed(seed, &[2]))?,
                ErrorModel::AdversarialFixedSupport => (0..cfg.big_n)
                    .map(|i| if i < cfg.k { if i % 2 == 0 { 10.0 } else { -10.0 } } else { 0.0 })
                    .collect(),
            };
            let w = b.tr_mul(&msg) + DVector::from_vec(z);
            let y: Vec<f64> = (&a * &w).iter().copied().collect();
            let sol = match solve_p1(&a, &y) {
                Ok(s) if s.is_optimal() => s,
                _ => return Ok(EccTrial { exact: false, solver_failed: true }),
            };
            let decoded = &b * (w - DVector::from_vec(sol.x));
            let err = (&decoded - &msg).amax();
            Ok(EccTrial { exact: err <= 1e-6 * msg.amax(), solver_failed: false })
        })
        .collect()
}
