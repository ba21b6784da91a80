// Mills ratio, the dual variable s_gamma and the saddlepoint z_gamma.

use polyproj::duals::{solve_external_argmin, solve_s_gamma, solve_saddlepoint_z};
use polyproj::specfun::{mills_r, Approximant, approximant};
use polyproj::Family;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for s in [0.5, 2.0, 6.0, 50.0] {
        println!("R({s}) = {:.12}", mills_r(s)?);
    }
    for gamma in [0.01, 0.1, 0.375, 0.8] {
        let d = solve_s_gamma(gamma)?;
        let z = solve_saddlepoint_z(gamma)?.z_gamma;
        println!("gamma={gamma}: s={:.9} y={:.9} z={z:.9}", d.s_gamma, d.y_gamma);
    }
    println!("s_tilde(0.01) = {}", approximant(Approximant::STilde, 0.01, None)?);
    let x = solve_external_argmin(Family::Simplex, 1e-4)?;
    println!("x_nu at nu=1e-4: {:.6} (approximant {:.6})", x.argmin, approximant(Approximant::XTildePlus, 1e-4, None)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
