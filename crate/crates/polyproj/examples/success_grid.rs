// A small seeded Monte Carlo grid of recovery success around the weak threshold.

use polyproj::experiments::{success_grid, ExperimentConfig, KRule, DEFAULT_SUCCESS_TOL};
use polyproj::thresholds::{rho_threshold, TransitionKind};
use polyproj::Family;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ExperimentConfig {
        family: Family::Cross,
        big_n: 80,
        n_list: vec![40],
        k_rule: KRule::AroundThreshold,
        trials_per_cell: 20,
        master_seed: 2024,
        success_tol: DEFAULT_SUCCESS_TOL,
    };
    let g = success_grid(&cfg)?;
    let rho = rho_threshold(Family::Cross, TransitionKind::Weak, 0.5)?;
    println!("weak threshold predicts the transition near k = {:.1}", 40.0 * rho);
    for c in &g.cells {
        println!("k={:2}: {:5.2} ({} ambiguous, {} errors)", c.k, c.fraction(), c.ambiguous, c.errors);
    }
    let mut csv = Vec::new();
    g.write_csv(&mut csv)?;
    print!("{}", String::from_utf8(csv)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
