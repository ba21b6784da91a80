// Drive the command-line front end in-process.

use polyproj::cli::run_with;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(["polyproj", "thresholds", "--family", "cross", "--kind", "strong", "--delta", "0.5"], &mut out, &mut err);
    println!("exit {code}: {}", String::from_utf8(out)?.trim());
    let mut out = Vec::new();
    let code = run_with(["polyproj", "thresholds", "--delta", "0"], &mut out, &mut err);
    println!("exit {code}: {}", String::from_utf8(err)?.trim());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
