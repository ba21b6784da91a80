// Finite-N bounds on lost faces, their level curves, and the comparison
// with the Rudelson-Vershynin estimate.

use polyproj::bounds::{bound, level_curve, rv_bound, TripleKNN};
use polyproj::thresholds::TransitionKind;
use polyproj::Family;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for big_n in [500, 1000, 5000] {
        let n = big_n / 2;
        let t = TripleKNN::new((0.05 * n as f64).round() as usize, n, big_n)?;
        let s = bound(Family::Simplex, TransitionKind::Strong, t)?;
        let w = bound(Family::Simplex, TransitionKind::Weak, t)?;
        println!("N={big_n:5} k={:3}: ln strong {:9.2} (l*={:?}), ln weak {:9.2}", t.k, s.ln_value, s.ell, w.ln_value);
    }
    let c = level_curve(Family::Cross, TransitionKind::Strong, 1000, 1.0, &[0.2, 0.5, 0.8])?;
    for (d, r) in &c.samples {
        println!("strong cross bound <= 1 at N=1000, delta={d}: rho up to {r:.4}");
    }
    println!("RV estimate at (5, 500, 1000): {:.3}", rv_bound(5, 500, 1000)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
