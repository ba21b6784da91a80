// Recover a sparse vector from Gaussian measurements by l1 minimization,
// and its nonnegative counterpart.

use nalgebra::DVector;
use polyproj::experiments::{gaussian_matrix, sparse_vector};
use polyproj::linprog::{solve_lp_nonneg, solve_p1, support};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (n, big_n, k) = (40, 100, 8);
    let a = gaussian_matrix(n, big_n, 17);
    let x0 = sparse_vector(big_n, k, true, 18)?;
    let y: Vec<f64> = (&a * DVector::from_column_slice(&x0)).iter().copied().collect();
    let sol = solve_p1(&a, &y)?;
    let err = sol.x.iter().zip(&x0).fold(0.0f64, |m, (p, q)| m.max((p - q).abs()));
    println!(
        "l1: objective {:.6}, support {:?}, max error {err:.1e}, unique {}, {} pivots",
        sol.objective,
        support(&sol.x, 1e-9),
        sol.is_unique(),
        sol.iterations
    );
    let xp = sparse_vector(big_n, k, false, 19)?;
    let yp: Vec<f64> = (&a * DVector::from_column_slice(&xp)).iter().copied().collect();
    let nn = solve_lp_nonneg(&a, &yp)?;
    println!("nonnegative: objective {:.6}, unique {}", nn.objective, nn.is_unique());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
