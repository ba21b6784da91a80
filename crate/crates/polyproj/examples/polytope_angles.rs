// Internal and external angles of the simplex and cross-polytope, and the
// expected number of faces lost under a Gaussian projection.

use polyproj::angles::*;
use polyproj::Family;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("beta(T^0, T^2) = {:.10} (a 60 degree corner)", internal_angle_oracle(0, 2)?);
    let (o, s) = (internal_angle_oracle(3, 15)?, internal_angle_saddlepoint(3, 15)?);
    println!("beta(T^3, T^15): integral {o:.6e}, saddlepoint {s:.6e}");
    for (ell, n) in [(0, 3), (10, 40), (200, 400)] {
        println!(
            "alpha at (l={ell}, N={n}): simplex {:.6e}, cross {:.6e}",
            external_angle(Family::Simplex, ell, n)?,
            external_angle(Family::Cross, ell, n)?
        );
    }
    for family in [Family::Simplex, Family::Cross] {
        let f = face_count(family, 0, 5)?;
        let d = discrepancy_delta(family, 0, 2, 5)?;
        println!("{family}: {} vertices in R^5, {d:.5} expected lost in a planar projection", f.exact);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
