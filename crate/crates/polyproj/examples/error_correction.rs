// Encode with a random orthogonal code, corrupt a few entries, decode by l1.

use polyproj::experiments::{ecc_roundtrip, EccConfig, ErrorModel};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for k in [0, 5, 10, 30] {
        let cfg = EccConfig { big_n: 120, n: 60, k, error_model: ErrorModel::RandomSigned, trials: 10, master_seed: 4 };
        let exact = ecc_roundtrip(&cfg)?.iter().filter(|t| t.exact).count();
        println!("{k:2} errors among 120 symbols: {exact}/10 messages recovered exactly");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
