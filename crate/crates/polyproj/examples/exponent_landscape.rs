// The exponent functions along a line of fixed nu.

use polyproj::exponents::{psi_com, psi_ext, psi_face, psi_int, psi_net, psi_weak};
use polyproj::{ExponentPoint, Family};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let nu = 0.6;
    for family in [Family::Simplex, Family::Cross] {
        println!("{family}: psi_ext({nu}) = {:.6}", psi_ext(family, nu)?);
        for gamma in [0.05, 0.2, 0.4, 0.6] {
            let p = ExponentPoint::new(nu, gamma)?;
            println!(
                "  gamma={gamma}: com {:.5} int {:.5} face {:.5} net {:+.5} weak {:+.5}",
                psi_com(family, p),
                psi_int(p)?,
                psi_face(family, p),
                psi_net(family, p)?,
                psi_weak(family, p)?
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
