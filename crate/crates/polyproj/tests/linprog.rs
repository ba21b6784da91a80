mod common;

use common::{solve_square, subsets, Mix};
use nalgebra::{DMatrix, DVector};
use polyproj::linprog::*;
use proptest::prelude::*;

fn gaussian(rng: &mut Mix, rows: usize, cols: usize, sd: f64) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| sd * rng.normal())
}

fn residual(a: &DMatrix<f64>, x: &[f64], b: &[f64]) -> f64 {
    (a * DVector::from_column_slice(x) - DVector::from_column_slice(b)).amax()
}

/// Minimum of `c^T x` over all basic feasible solutions, by enumerating bases.
fn bfs_minimum(a: &DMatrix<f64>, b: &[f64], c: &[f64]) -> Option<f64> {
    let (rows, cols) = a.shape();
    let mut best: Option<f64> = None;
    for cols_b in subsets(cols, rows) {
        let m = (0..rows).map(|i| cols_b.iter().map(|&j| a[(i, j)]).collect()).collect();
        let Some(xb) = solve_square(m, b.to_vec()) else { continue };
        if xb.iter().any(|v| *v < -1e-9) {
            continue;
        }
        let v: f64 = cols_b.iter().zip(&xb).map(|(&j, x)| c[j] * x).sum();
        best = Some(best.map_or(v, |b: f64| b.min(v)));
    }
    best
}

/// Exhaustive `l1` minimum over all square supports: every vertex of the
/// feasible set has a basis of `n` columns.
fn support_search(a: &DMatrix<f64>, y: &[f64], nonneg: bool) -> Option<(f64, Vec<f64>)> {
    let (n, big_n) = a.shape();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for s in subsets(big_n, n) {
        let m = (0..n).map(|i| s.iter().map(|&j| a[(i, j)]).collect()).collect();
        let Some(xs) = solve_square(m, y.to_vec()) else { continue };
        if nonneg && xs.iter().any(|v| *v < -1e-12) {
            continue;
        }
        let v: f64 = xs.iter().map(|x| x.abs()).sum();
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            let mut x = vec![0.0; big_n];
            for (&j, xv) in s.iter().zip(&xs) {
                x[j] = *xv;
            }
            best = Some((v, x));
        }
    }
    best
}

#[test]
fn matches_basis_enumeration_on_random_instances() {
    let mut rng = Mix(11);
    for t in 0..50 {
        let rows = 1 + (rng.uniform() * 6.0) as usize;
        let cols = rows + 1 + (rng.uniform() * (12 - rows) as f64) as usize;
        let a = gaussian(&mut rng, rows, cols, 1.0);
        let x0: Vec<f64> = (0..cols).map(|_| rng.uniform()).collect();
        let b: Vec<f64> = (&a * DVector::from_vec(x0)).iter().copied().collect();
        let c: Vec<f64> = (0..cols).map(|_| 0.1 + rng.uniform()).collect();
        let inst = LpInstance::new(DVector::from_vec(c.clone()), a.clone(), DVector::from_vec(b.clone())).unwrap();
        let sol = lp_solve(&inst).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal, "instance {t}");
        let oracle = bfs_minimum(&a, &b, &c).unwrap();
        assert!((sol.objective - oracle).abs() <= 1e-7 * (1.0 + oracle.abs()), "instance {t}: {} vs {oracle}", sol.objective);
        assert!(residual(&a, &sol.x, &b) <= 1e-9 * (1.0 + b.iter().fold(0.0f64, |m, v| m.max(v.abs()))));
        assert!(sol.x.iter().all(|v| *v >= 0.0));
    }
}

#[test]
fn random_five_by_ten() {
    let mut rng = Mix(5);
    let a = gaussian(&mut rng, 5, 10, 1.0);
    let b: Vec<f64> = (&a * DVector::from_element(10, 0.5)).iter().copied().collect();
    let c: Vec<f64> = (0..10).map(|_| rng.uniform() - 0.2).collect();
    let inst = LpInstance::new(DVector::from_vec(c.clone()), a.clone(), DVector::from_vec(b.clone())).unwrap();
    let sol = lp_solve(&inst).unwrap();
    match bfs_minimum(&a, &b, &c) {
        Some(v) if sol.status == LpStatus::Optimal => assert!((sol.objective - v).abs() < 1e-7),
        _ => assert_eq!(sol.status, LpStatus::Unbounded),
    }
}

#[test]
fn duality_gap_closes() {
    let mut rng = Mix(23);
    for t in 0..50 {
        let rows = 3 + (rng.uniform() * 8.0) as usize;
        let cols = 2 * rows + (rng.uniform() * 10.0) as usize;
        let a = gaussian(&mut rng, rows, cols, 1.0 / (rows as f64).sqrt());
        let b: Vec<f64> = (0..rows).map(|_| rng.normal()).collect();
        let sol = solve_p1(&a, &b).unwrap();
        assert!(sol.is_optimal(), "instance {t}");
        // Dual of min ||x||_1 s.t. Ax = b: max b^T y with ||A^T y||_inf <= 1.
        let y = DVector::from_vec(sol.duals.clone());
        let aty = a.tr_mul(&y);
        assert!(aty.amax() <= 1.0 + 1e-9, "instance {t}");
        let dual: f64 = b.iter().zip(y.iter()).map(|(p, q)| p * q).sum();
        assert!(sol.objective - dual <= 1e-7 && sol.objective - dual >= -1e-7, "instance {t}");
    }
}

#[test]
fn p1_identity_and_segment() {
    let y = [0.5, -2.0, 0.0, 3.0];
    let s = solve_p1(&DMatrix::identity(4, 4), &y).unwrap();
    assert_eq!(s.x, y.to_vec());
    assert!(s.is_unique());
    let s = solve_p1(&DMatrix::from_row_slice(1, 2, &[1.0, 1.0]), &[1.0]).unwrap();
    assert!((s.objective - 1.0).abs() < 1e-12);
    assert_eq!(s.unique, Uniqueness::PossiblyNonUnique);
}

#[test]
fn nonneg_identity_and_outside_cone() {
    let y = [0.5, 2.0, 0.0];
    let s = solve_lp_nonneg(&DMatrix::identity(3, 3), &y).unwrap();
    assert_eq!(s.x, y.to_vec());
    let mut rng = Mix(3);
    let a = gaussian(&mut rng, 5, 8, 1.0).map(|v| v.abs());
    let y: Vec<f64> = (-(&a * DVector::from_element(8, 1.0))).iter().copied().collect();
    assert_eq!(solve_lp_nonneg(&a, &y).unwrap().status, LpStatus::Infeasible);
}

#[test]
fn p1_matches_support_search() {
    let mut rng = Mix(101);
    let mut recovered = 0;
    for t in 0..40 {
        let a = gaussian(&mut rng, 5, 8, 1.0 / 5f64.sqrt());
        let k = 1 + t % 2;
        let mut x0 = vec![0.0; 8];
        for &i in &subsets(8, k)[(rng.uniform() * subsets(8, k).len() as f64) as usize] {
            x0[i] = if rng.uniform() < 0.5 { -1.0 } else { 1.0 } * (0.5 + rng.uniform());
        }
        let y: Vec<f64> = (&a * DVector::from_column_slice(&x0)).iter().copied().collect();
        let sol = solve_p1(&a, &y).unwrap();
        let (best, xb) = support_search(&a, &y, false).unwrap();
        assert!((sol.objective - best).abs() < 1e-9, "trial {t}");
        if sol.is_unique() {
            assert!(sol.x.iter().zip(&xb).all(|(p, q)| (p - q).abs() < 1e-8), "trial {t}");
        }
        if sol.x.iter().zip(&x0).all(|(p, q)| (p - q).abs() < 1e-8) {
            recovered += 1;
        }
    }
    assert!(recovered >= 30, "{recovered}");
}

#[test]
fn nonneg_matches_support_search() {
    let mut rng = Mix(202);
    let mut recovered = 0;
    for t in 0..40 {
        let a = gaussian(&mut rng, 5, 8, 1.0 / 5f64.sqrt());
        let mut x0 = vec![0.0; 8];
        for &i in &subsets(8, 2)[(rng.uniform() * 28.0) as usize] {
            x0[i] = 0.5 + rng.uniform();
        }
        let y: Vec<f64> = (&a * DVector::from_column_slice(&x0)).iter().copied().collect();
        let sol = solve_lp_nonneg(&a, &y).unwrap();
        let (best, _) = support_search(&a, &y, true).unwrap();
        assert!((sol.objective - best).abs() < 1e-9, "trial {t}");
        if sol.x.iter().zip(&x0).all(|(p, q)| (p - q).abs() < 1e-8) {
            recovered += 1;
        }
    }
    assert!(recovered >= 30, "{recovered}");
}

#[test]
fn p1_scale_invariance() {
    let mut rng = Mix(7);
    for _ in 0..10 {
        let a = gaussian(&mut rng, 10, 25, 1.0 / 10f64.sqrt());
        let mut x0 = vec![0.0; 25];
        x0[3] = 1.5;
        x0[17] = -0.7;
        let y: Vec<f64> = (&a * DVector::from_vec(x0)).iter().copied().collect();
        let base = solve_p1(&a, &y).unwrap().x;
        for c in [1e-3, 7.0, 1e4] {
            let ys: Vec<f64> = y.iter().map(|v| c * v).collect();
            let x = solve_p1(&(&a * c), &ys).unwrap().x;
            assert!(x.iter().zip(&base).all(|(p, q)| (p - q).abs() < 1e-8), "c={c}");
        }
    }
}

#[test]
fn certified_support_is_stable_under_cost_noise() {
    let mut rng = Mix(31);
    let mut certified = 0;
    for _ in 0..20 {
        let a = gaussian(&mut rng, 6, 14, 1.0);
        let b: Vec<f64> = (&a * DVector::from_fn(14, |_, _| rng.uniform())).iter().copied().collect();
        let c: Vec<f64> = (0..14).map(|_| 0.1 + rng.uniform()).collect();
        let inst = LpInstance::new(DVector::from_vec(c.clone()), a.clone(), DVector::from_vec(b.clone())).unwrap();
        let sol = lp_solve(&inst).unwrap();
        if !sol.is_unique() {
            continue;
        }
        certified += 1;
        let supp = support(&sol.x, 1e-9);
        for _ in 0..10 {
            let cp: Vec<f64> = c.iter().map(|v| v + 1e-12 * (2.0 * rng.uniform() - 1.0)).collect();
            let inst = LpInstance::new(DVector::from_vec(cp), a.clone(), DVector::from_vec(b.clone())).unwrap();
            assert_eq!(support(&lp_solve(&inst).unwrap().x, 1e-9), supp);
        }
    }
    assert!(certified >= 15);
}

#[test]
fn klee_minty_cube() {
    // max sum 2^(d-j) x_j s.t. 2 sum_{j<i} 2^(i-j) x_j + x_i <= 5^i; optimum 5^d.
    let d = 7;
    let mut a = DMatrix::zeros(d, 2 * d);
    let mut b = DVector::zeros(d);
    for i in 0..d {
        for j in 0..i {
            a[(i, j)] = 2f64.powi((i - j + 1) as i32);
        }
        a[(i, i)] = 1.0;
        a[(i, d + i)] = 1.0;
        b[i] = 5f64.powi(i as i32 + 1);
    }
    let c = DVector::from_fn(2 * d, |j, _| if j < d { -(2f64.powi((d - 1 - j) as i32)) } else { 0.0 });
    let sol = lp_solve(&LpInstance::new(c, a, b).unwrap()).unwrap();
    assert!((sol.objective + 5f64.powi(d as i32)).abs() < 1e-6);
    assert!(sol.is_unique());
}

#[test]
fn rejects_malformed_instances() {
    let a = DMatrix::from_row_slice(1, 2, &[1.0, f64::NAN]);
    assert!(LpInstance::new(DVector::zeros(2), a, DVector::zeros(1)).is_err());
    assert!(LpInstance::new(DVector::zeros(3), DMatrix::zeros(1, 2), DVector::zeros(1)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn optimum_is_feasible_and_dual_bounded(seed in any::<u64>(), rows in 1usize..6, extra in 1usize..8) {
        let mut rng = Mix(seed);
        let cols = rows + extra;
        let a = gaussian(&mut rng, rows, cols, 1.0);
        let b: Vec<f64> = (&a * DVector::from_fn(cols, |_, _| rng.uniform())).iter().copied().collect();
        let c: Vec<f64> = (0..cols).map(|_| rng.uniform()).collect();
        let inst = LpInstance::new(DVector::from_vec(c.clone()), a.clone(), DVector::from_vec(b.clone())).unwrap();
        let sol = lp_solve(&inst).unwrap();
        prop_assert_eq!(sol.status, LpStatus::Optimal);
        let scale = 1.0 + b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        prop_assert!(residual(&a, &sol.x, &b) <= 1e-9 * scale * 10.0);
        let y = DVector::from_vec(sol.duals.clone());
        let reduced = DVector::from_vec(c) - a.tr_mul(&y);
        prop_assert!(reduced.min() >= -1e-8);
        let dual: f64 = b.iter().zip(y.iter()).map(|(p, q)| p * q).sum();
        prop_assert!((sol.objective - dual).abs() <= 1e-7 * scale);
    }
}
