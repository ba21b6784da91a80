// Four threshold curves written as CSV and as a static SVG figure.

use polyproj::cli::{emit_csv, emit_svg_phase_diagram, Table};
use polyproj::thresholds::{phase_curve, TransitionKind};
use polyproj::Family;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let grid: Vec<f64> = (1..20).map(|i| i as f64 / 20.0).collect();
    let mut curves = Vec::new();
    for kind in [TransitionKind::Weak, TransitionKind::Strong] {
        for family in [Family::Simplex, Family::Cross] {
            curves.push(phase_curve(family, kind, &grid)?);
        }
    }
    let dir = tempfile::tempdir()?;
    let csv = dir.path().join("simplex_weak.csv");
    emit_csv(&Table::from_curve(&curves[0]), &csv)?;
    let svg = dir.path().join("phase_diagram.svg");
    emit_svg_phase_diagram(&curves, None, &svg)?;
    println!("{} rows of CSV, {} bytes of SVG", std::fs::read_to_string(&csv)?.lines().count() - 1, std::fs::metadata(&svg)?.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
