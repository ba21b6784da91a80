mod command_line_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/command_line.rs"));
}

mod error_correction_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/error_correction.rs"));
}

mod exponent_landscape_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/exponent_landscape.rs"));
}

mod finite_bounds_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/finite_bounds.rs"));
}

mod l1_recovery_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/l1_recovery.rs"));
}

mod neighborliness_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/neighborliness.rs"));
}

mod phase_diagram_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/phase_diagram.rs"));
}

mod polytope_angles_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/polytope_angles.rs"));
}

mod special_functions_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/special_functions.rs"));
}

mod success_grid_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/success_grid.rs"));
}

mod threshold_table_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/threshold_table.rs"));
}

#[test]
fn command_line_example_runs() {
    command_line_example::run_example().expect("command_line example failed");
}

#[test]
fn error_correction_example_runs() {
    error_correction_example::run_example().expect("error_correction example failed");
}

#[test]
fn exponent_landscape_example_runs() {
    exponent_landscape_example::run_example().expect("exponent_landscape example failed");
}

#[test]
fn finite_bounds_example_runs() {
    finite_bounds_example::run_example().expect("finite_bounds example failed");
}

#[test]
fn l1_recovery_example_runs() {
    l1_recovery_example::run_example().expect("l1_recovery example failed");
}

#[test]
fn neighborliness_example_runs() {
    neighborliness_example::run_example().expect("neighborliness example failed");
}

#[test]
fn phase_diagram_example_runs() {
    phase_diagram_example::run_example().expect("phase_diagram example failed");
}

#[test]
fn polytope_angles_example_runs() {
    polytope_angles_example::run_example().expect("polytope_angles example failed");
}

#[test]
fn special_functions_example_runs() {
    special_functions_example::run_example().expect("special_functions example failed");
}

#[test]
fn success_grid_example_runs() {
    success_grid_example::run_example().expect("success_grid example failed");
}

#[test]
fn threshold_table_example_runs() {
    threshold_table_example::run_example().expect("threshold_table example failed");
}
