// Weak and strong thresholds for both polytope families, next to their
// small-delta asymptotes.

use polyproj::thresholds::{asymptotic_rho, rho_threshold, TransitionKind};
use polyproj::Family;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>7} {:>10} {:>10} {:>10} {:>10}", "delta", "W simplex", "W cross", "S simplex", "S cross");
    for delta in [0.001, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9] {
        let mut row = format!("{delta:>7}");
        for kind in [TransitionKind::Weak, TransitionKind::Strong] {
            for family in [Family::Simplex, Family::Cross] {
                row += &format!(" {:>10.6}", rho_threshold(family, kind, delta)?);
            }
        }
        println!("{row}");
    }
    let d = 1e-3;
    println!(
        "weak asymptote at delta = {d}: {:.6}; strong simplex asymptote: {:.6}",
        asymptotic_rho(Family::Simplex, TransitionKind::Weak, d)?,
        asymptotic_rho(Family::Simplex, TransitionKind::Strong, d)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
