use polyproj::bounds::{bound, TripleKNN};
use polyproj::cli::*;
use polyproj::experiments::{success_grid, GridCell, GridResult};
use polyproj::thresholds::{phase_curve, rho_threshold, PhaseCurve, TransitionKind};
use polyproj::Family;
use std::fs;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("polyproj").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn threshold_value_matches_library() {
    let (code, out, _) = call(&["thresholds", "--family", "simplex", "--kind", "weak", "--delta", "0.5"]);
    assert_eq!(code, 0);
    let v: f64 = out.trim().parse().unwrap();
    assert!((v - 0.5581).abs() <= 1e-3);
    let lib = rho_threshold(Family::Simplex, TransitionKind::Weak, 0.5).unwrap();
    assert_eq!(out.trim(), fmt12(lib));
}

#[test]
fn invalid_delta_exits_two_with_one_line() {
    for d in ["0", "-0.1", "1.5"] {
        let (code, out, err) = call(&["thresholds", "--delta", d]);
        assert_eq!(code, EXIT_INVALID, "delta {d}");
        assert!(out.is_empty());
        assert_eq!(err.trim_end().lines().count(), 1, "{err}");
    }
    assert_eq!(call(&["frobnicate"]).0, EXIT_INVALID);
    assert_eq!(call(&["thresholds"]).0, EXIT_INVALID);
    assert_eq!(call(&["--help"]).0, EXIT_OK);
}

#[test]
fn unwritable_output_exits_three() {
    let (code, _, err) = call(&["thresholds", "--delta-grid", "0.3,0.6", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(code, EXIT_IO, "{err}");
}

#[test]
fn curve_csv_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let (code, _, _) = call(&["thresholds", "--kind", "strong", "--family", "cross", "--delta-grid", "0.2,0.4,0.6", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.ends_with('\n'));
    let lib = phase_curve(Family::Cross, TransitionKind::Strong, &[0.2, 0.4, 0.6]).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rdr.headers().unwrap(), vec!["delta", "rho"]);
    let rows: Vec<(f64, f64)> = rdr.records().map(|r| {
        let r = r.unwrap();
        (r[0].parse().unwrap(), r[1].parse().unwrap())
    }).collect();
    assert_eq!(rows.len(), 3);
    for (got, want) in rows.iter().zip(&lib.samples) {
        assert!((got.0 - want.0).abs() <= 1e-12 && (got.1 - want.1).abs() <= 1e-12 * want.1);
    }
    assert!(rows.windows(2).all(|w| w[1].0 > w[0].0));
}

#[test]
fn one_row_table_is_two_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let mut t = Table::new(&["a", "b"]);
    t.push(vec![Value::Real(1.0 / 7.0), Value::Int(3)]);
    emit_csv(&t, &path).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text, "a,b\n0.142857142857,3\n");
    let v: f64 = text.lines().nth(1).unwrap().split(',').next().unwrap().parse().unwrap();
    assert!((v - 1.0 / 7.0).abs() <= 1e-12);
    assert!(emit_csv(&Table::new(&["a"]), &path).is_err());
}

#[test]
fn bound_output_matches_library() {
    let (code, out, _) = call(&["bound", "--family", "simplex", "--kind", "weak", "--k", "5", "--n", "100", "--big-n", "200"]);
    assert_eq!(code, 0);
    let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    let lib = bound(Family::Simplex, TransitionKind::Weak, TripleKNN::new(5, 100, 200).unwrap()).unwrap();
    assert_eq!(row[5], fmt12(lib.ln_value));
    assert_eq!(row[7], lib.ell.unwrap().to_string());
    assert_eq!(call(&["bound", "--family", "cross", "--k", "5", "--n", "5", "--big-n", "10"]).0, EXIT_INVALID);
}

#[test]
fn angles_and_levelcurve() {
    let (code, out, _) = call(&["angles", "--kind", "internal", "--k", "0", "--ell", "2", "--method", "oracle"]);
    assert_eq!(code, 0);
    assert!((out.trim().parse::<f64>().unwrap() - 1.0 / 6.0).abs() < 1e-9);
    let (code, out, _) = call(&["angles", "--kind", "external", "--family", "cross", "--ell", "0", "--n-total", "2"]);
    assert_eq!(code, 0);
    assert!((out.trim().parse::<f64>().unwrap() - 0.25).abs() < 1e-9);
    assert_eq!(call(&["angles", "--kind", "external", "--ell", "0"]).0, EXIT_INVALID);
    let (code, out, _) = call(&["levelcurve", "--family", "cross", "--big-n", "300", "--delta-grid", "0.4,0.6"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3);
}

fn write_config(dir: &std::path::Path, body: &str) -> std::path::PathBuf {
    let p = dir.join("grid.cfg");
    fs::write(&p, body).unwrap();
    p
}

#[test]
fn experiment_csv_is_deterministic_and_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "family=cross\nN=40\nn_list=20\nk_rule=2,5,8\ntrials=6\nseed=11\n");
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    assert_eq!(call(&["experiment", "--config", cfg.to_str().unwrap(), "--out", a.to_str().unwrap()]).0, 0);
    assert_eq!(call(&["experiment", "--config", cfg.to_str().unwrap(), "--out", b.to_str().unwrap()]).0, 0);
    let bytes = fs::read(&a).unwrap();
    assert_eq!(bytes, fs::read(&b).unwrap());
    let lib = success_grid(&ConfigFile::load(&cfg).unwrap().experiment().unwrap()).unwrap();
    let mut direct = Vec::new();
    lib.write_csv(&mut direct).unwrap();
    assert_eq!(bytes, direct);
    let bad = write_config(dir.path(), "family=cross\nN=40\nn_list=20\nk_rule=2\ntrials=6\nseed=11\ncolour=blue\n");
    assert_eq!(call(&["experiment", "--config", bad.to_str().unwrap()]).0, EXIT_INVALID);
    let missing = dir.path().join("none.cfg");
    assert_eq!(call(&["experiment", "--config", missing.to_str().unwrap()]).0, EXIT_IO);
}

#[test]
fn experiment_svg_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig.svg");
    let cfg = write_config(
        dir.path(),
        &format!("family=simplex\nN=40\nn_list=20\nk_rule=4,8\ntrials=4\nseed=1\ndelta_grid=0.3,0.5,0.7\nformat=svg\nout_path={}\n", out.display()),
    );
    assert_eq!(call(&["experiment", "--config", cfg.to_str().unwrap()]).0, 0);
    let svg = fs::read_to_string(&out).unwrap();
    assert!(svg.contains(r#"class="cells""#) && svg.matches("<rect").count() == 3);
    assert_eq!(svg.matches("<polyline").count(), 1);
}

#[test]
fn ecc_from_flags_and_config() {
    let (code, out, _) = call(&["ecc", "--big-n", "40", "--n", "20", "--k", "0", "--trials", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "trial,exact,solver_failed\n0,1,0\n1,1,0\n2,1,0\n");
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "N=40\nn_list=20\nk_rule=2\ntrials=3\nseed=5\nerror_model=adversarial\n");
    let csv = dir.path().join("ecc.csv");
    let (code, out, _) = call(&["ecc", "--config", cfg.to_str().unwrap(), "--out", csv.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "exact 3/3");
}

#[test]
fn selftest_passes() {
    let (code, out, _) = call(&["selftest"]);
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| l.starts_with("PASS")));
}

fn polyline_y_at(svg: &str, class: &str, x: f64) -> f64 {
    let start = svg.find(&format!(r#"class="{class}""#)).unwrap();
    let pts = &svg[start..];
    let pts = &pts[pts.find("points=\"").unwrap() + 8..];
    let pts = &pts[..pts.find('"').unwrap()];
    pts.split(' ')
        .map(|p| {
            let (a, b) = p.split_once(',').unwrap();
            (a.parse::<f64>().unwrap(), b.parse::<f64>().unwrap())
        })
        .find(|(px, _)| (px - x).abs() < 1e-6)
        .unwrap()
        .1
}

#[test]
fn four_threshold_figure_ordering() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("four.svg");
    assert_eq!(call(&["thresholds", "--figure", path.to_str().unwrap(), "--delta-grid", "0.25,0.5,0.75"]).0, 0);
    let svg = fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
    assert!(!svg.contains("class=\"cells\""));
    // delta = 0.5 sits at x = 50 + 240; larger rho is higher up, i.e. smaller y.
    let order = ["simplex-weak", "cross-weak", "simplex-strong", "cross-strong"];
    let ys: Vec<f64> = order.iter().map(|c| polyline_y_at(&svg, c, 290.0)).collect();
    assert!(ys.windows(2).all(|w| w[0] < w[1]), "{ys:?}");
}

#[test]
fn svg_edge_cases() {
    let c = PhaseCurve::new(Family::Simplex, TransitionKind::Weak, vec![(0.2, 0.3), (0.4, 0.5)]).unwrap();
    let svg = render_svg_phase_diagram(&[c.clone()], None).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 1);
    let empty = GridResult { family: Family::Simplex, big_n: 10, cells: vec![] };
    assert_eq!(render_svg_phase_diagram(&[c.clone()], Some(&empty)).unwrap(), svg);
    let one = GridResult { family: Family::Simplex, big_n: 10, cells: vec![GridCell { n: 5, k: 2, trials: 4, successes: 4, ambiguous: 0, errors: 0 }] };
    assert!(render_svg_phase_diagram(&[c], Some(&one)).unwrap().contains("rgb(0,0,0)"));
    assert!(render_svg_phase_diagram(&[], None).is_err());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_polyproj");
    let ok = std::process::Command::new(bin).args(["thresholds", "--delta", "0.5"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!((String::from_utf8_lossy(&ok.stdout).trim().parse::<f64>().unwrap() - 0.5581).abs() <= 1e-3);
    let bad = std::process::Command::new(bin).args(["thresholds", "--delta", "0"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
