// Certify neighborliness of one projected simplex, then estimate expected
// face counts by Monte Carlo.

use polyproj::angles::discrepancy_delta;
use polyproj::experiments::{gaussian_matrix, mc_face_count, neighborliness_check, NeighborlyMode};
use polyproj::Family;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = gaussian_matrix(6, 8, 22);
    println!("{:?}", neighborliness_check(Family::Simplex, &a, 1, NeighborlyMode::Exhaustive)?);
    let b = gaussian_matrix(10, 40, 5);
    println!("{:?}", neighborliness_check(Family::Cross, &b, 2, NeighborlyMode::Sampled { trials: 200, seed: 1 })?);
    let e = mc_face_count(Family::Simplex, 0, 2, 5, 2000, 7)?;
    println!(
        "planar projections of T^4 keep {:.3} +- {:.3} vertices; the angle sums predict {:.3}",
        e.mean,
        e.stderr,
        5.0 - discrepancy_delta(Family::Simplex, 0, 2, 5)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
