//! Command-line front end.
//!
//! Each subcommand is a thin adapter over a library call. Files are written
//! atomically (temporary file in the target directory, then rename) and all
//! numbers are formatted without locale: reals with 12 significant digits.
//!
//! Exit codes: 0 success, 1 numerical or solver failure, 2 invalid input,
//! 3 I/O failure.

use crate::angles::{angle, AngleKind, AngleMethod, AngleRequest};
use crate::bounds::{bound, level_curve, rv_bound, TripleKNN};
use crate::error::{Error, Result};
use crate::experiments::{
    ecc_roundtrip, success_grid, EccConfig, ErrorModel, ExperimentConfig, GridResult, KRule, DEFAULT_SUCCESS_TOL,
};
use crate::exponents::Family;
use crate::linprog::solve_p1;
use crate::thresholds::{phase_curve, rho_threshold, PhaseCurve, TransitionKind};
use clap::{Parser, Subcommand, ValueEnum};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_IO: i32 = 3;

const DEFAULT_GRID: &str = "0.05,0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.45,0.5,0.55,0.6,0.65,0.7,0.75,0.8,0.85,0.9,0.95";

#[derive(Debug, Parser)]
#[command(name = "polyproj", about = "Face-count phase transitions of projected simplices and cross-polytopes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weak or strong threshold rho(delta); with --figure, all four curves as SVG.
    Thresholds {
        #[arg(long, default_value = "simplex")]
        family: Family,
        #[arg(long, default_value = "weak")]
        kind: TransitionKind,
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<f64>,
        /// Comma-separated deltas; written as CSV.
        #[arg(long)]
        delta_grid: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        figure: Option<PathBuf>,
    },
    /// Finite-N bound on lost faces at (k, n, N).
    Bound {
        #[arg(long)]
        family: Family,
        #[arg(long, default_value = "strong")]
        kind: TransitionKind,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long = "big-n")]
        big_n: usize,
    },
    /// Level set of the finite-N bound as rho over a delta grid.
    Levelcurve {
        #[arg(long)]
        family: Family,
        #[arg(long, default_value = "strong")]
        kind: TransitionKind,
        #[arg(long = "big-n")]
        big_n: usize,
        #[arg(long, default_value_t = 1.0)]
        level: f64,
        #[arg(long, default_value = DEFAULT_GRID)]
        delta_grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Internal or external angle.
    Angles {
        #[arg(long, value_enum)]
        kind: AngleArg,
        #[arg(long, default_value = "simplex")]
        family: Family,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long = "n-total")]
        n_total: Option<usize>,
        #[arg(long, value_enum, default_value = "quadrature")]
        method: MethodArg,
    },
    /// Monte Carlo success grid from a config file.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Error-correction round trips, from flags or a config file.
    Ecc {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long = "big-n", default_value_t = 200)]
        big_n: usize,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        k: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "random")]
        model: ModelArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quick consistency checks.
    Selftest,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AngleArg {
    Internal,
    External,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Quadrature,
    Saddlepoint,
    Oracle,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModelArg {
    Random,
    Adversarial,
}

impl From<ModelArg> for ErrorModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Random => ErrorModel::RandomSigned,
            ModelArg::Adversarial => ErrorModel::AdversarialFixedSupport,
        }
    }
}

/// Locale-free rendering of a real with 12 significant digits.
pub fn fmt12(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    let rounded: f64 = format!("{v:.11e}").parse().expect("own formatting parses");
    let a = rounded.abs();
    if a == 0.0 || (1e-5..1e15).contains(&a) {
        format!("{rounded}")
    } else {
        format!("{v:.11e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Real(f64),
    Text(String),
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Int(i) => i.to_string(),
            Value::Real(r) => fmt12(*r),
            Value::Text(t) => t.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, w: W) -> Result<()> {
        if self.rows.is_empty() {
            return Err(Error::Invalid("refusing to write an empty table".into()));
        }
        if self.rows.iter().any(|r| r.len() != self.header.len()) {
            return Err(Error::Invalid("row width differs from header".into()));
        }
        let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
        let io = |e: csv::Error| Error::Io(e.to_string());
        out.write_record(&self.header).map_err(io)?;
        for r in &self.rows {
            out.write_record(r.iter().map(Value::render)).map_err(io)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn from_curve(curve: &PhaseCurve) -> Self {
        let mut t = Table::new(&["delta", "rho"]);
        for &(d, r) in &curve.samples {
            t.push(vec![Value::Real(d), Value::Real(r)]);
        }
        t
    }
}

/// Writes through a temporary file in the destination directory, then renames.
pub fn write_atomic(path: &Path, fill: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    fill(&mut tmp)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.to_string()))?;
    Ok(())
}

pub fn emit_csv(table: &Table, path: &Path) -> Result<()> {
    write_atomic(path, |w| table.write(w))
}

const SVG_SIZE: f64 = 480.0;
const SVG_MARGIN: f64 = 50.0;
const PALETTE: [&str; 4] = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a"];

fn px(delta: f64, rho: f64) -> (f64, f64) {
    (SVG_MARGIN + delta * SVG_SIZE, SVG_MARGIN + (1.0 - rho) * SVG_SIZE)
}

/// Static SVG phase diagram: one polyline per curve over optional
/// success-fraction cells (`delta = n/N`, `rho = k/n`).
pub fn render_svg_phase_diagram(curves: &[PhaseCurve], grid: Option<&GridResult>) -> Result<String> {
    if curves.is_empty() {
        return Err(Error::Invalid("a phase diagram needs at least one curve".into()));
    }
    let total = SVG_SIZE + 2.0 * SVG_MARGIN;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{total}" height="{total}" viewBox="0 0 {total} {total}">"#
    );
    if let Some(g) = grid.filter(|g| !g.cells.is_empty()) {
        let _ = writeln!(s, r#"<g class="cells">"#);
        let w = SVG_SIZE / g.big_n as f64 * 4.0;
        for c in &g.cells {
            let (x, y) = px(c.n as f64 / g.big_n as f64, c.k as f64 / c.n as f64);
            let h = SVG_SIZE / c.n as f64;
            let shade = (255.0 * (1.0 - c.fraction())).round() as u8;
            let _ = writeln!(
                s,
                r#"<rect x="{:.2}" y="{:.2}" width="{w:.2}" height="{h:.2}" fill="rgb({shade},{shade},{shade})"/>"#,
                x - w / 2.0,
                y - h / 2.0
            );
        }
        let _ = writeln!(s, "</g>");
    }
    let (x0, y0) = px(0.0, 0.0);
    let (x1, y1) = px(1.0, 1.0);
    let _ = writeln!(s, r#"<g class="axes" stroke="black" fill="none">"#);
    let _ = writeln!(s, r#"<rect x="{x0}" y="{y1}" width="{}" height="{}"/>"#, x1 - x0, y0 - y1);
    let _ = writeln!(s, "</g>");
    for i in 0..=4 {
        let t = i as f64 / 4.0;
        let (tx, _) = px(t, 0.0);
        let (_, ty) = px(0.0, t);
        let _ = writeln!(s, r#"<text x="{tx}" y="{}" font-size="12" text-anchor="middle">{t}</text>"#, y0 + 18.0);
        let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="12" text-anchor="end">{t}</text>"#, x0 - 6.0, ty + 4.0);
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="14" text-anchor="middle">delta = n/N</text>"#, total / 2.0, total - 8.0);
    let _ = writeln!(
        s,
        r#"<text x="14" y="{}" font-size="14" text-anchor="middle" transform="rotate(-90 14 {})">rho = k/n</text>"#,
        total / 2.0,
        total / 2.0
    );
    for (i, c) in curves.iter().enumerate() {
        let pts: Vec<String> = c
            .samples
            .iter()
            .map(|&(d, r)| {
                let (x, y) = px(d, r);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline class="{}-{}" fill="none" stroke="{}" stroke-width="2" points="{}"/>"#,
            c.family,
            c.kind,
            PALETTE[i % PALETTE.len()],
            pts.join(" ")
        );
    }
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

pub fn emit_svg_phase_diagram(curves: &[PhaseCurve], grid: Option<&GridResult>, path: &Path) -> Result<()> {
    let svg = render_svg_phase_diagram(curves, grid)?;
    write_atomic(path, |w| Ok(w.write_all(svg.as_bytes())?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Svg,
}

/// Flat `key=value` configuration; `#` starts a comment line.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    pub family: Option<Family>,
    pub kind: Option<TransitionKind>,
    pub big_n: Option<usize>,
    pub n_list: Option<Vec<usize>>,
    pub k_rule: Option<KRule>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub delta_grid: Option<Vec<f64>>,
    pub out_path: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub error_model: Option<ErrorModel>,
}

fn parse_list<T: std::str::FromStr>(key: &str, v: &str) -> Result<Vec<T>> {
    v.split(',')
        .map(|p| p.trim().parse::<T>().map_err(|_| Error::Invalid(format!("{key}: cannot parse '{p}'"))))
        .collect()
}

fn parse_one<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Invalid(format!("{key}: cannot parse '{v}'")))
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut seen = BTreeMap::new();
        let mut c = ConfigFile::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, v) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| Error::Invalid(format!("line {}: expected key=value", lineno + 1)))?;
            if seen.insert(key.to_string(), lineno).is_some() {
                return Err(Error::Invalid(format!("line {}: duplicate key '{key}'", lineno + 1)));
            }
            match key {
                "family" => c.family = Some(v.parse().map_err(Error::Invalid)?),
                "kind" => c.kind = Some(v.parse().map_err(Error::Invalid)?),
                "N" => c.big_n = Some(parse_one(key, v)?),
                "n_list" => c.n_list = Some(parse_list(key, v)?),
                "k_rule" => {
                    c.k_rule = Some(if v == "around" || v == "around-threshold" {
                        KRule::AroundThreshold
                    } else {
                        KRule::Explicit(parse_list(key, v)?)
                    })
                }
                "trials" => c.trials = Some(parse_one(key, v)?),
                "seed" => c.seed = Some(parse_one(key, v)?),
                "delta_grid" => c.delta_grid = Some(parse_list(key, v)?),
                "out_path" => c.out_path = Some(PathBuf::from(v)),
                "format" => {
                    c.format = Some(match v {
                        "csv" => OutputFormat::Csv,
                        "svg" => OutputFormat::Svg,
                        _ => return Err(Error::Invalid(format!("format: expected csv or svg, got '{v}'"))),
                    })
                }
                "error_model" => {
                    c.error_model = Some(match v {
                        "random" => ErrorModel::RandomSigned,
                        "adversarial" => ErrorModel::AdversarialFixedSupport,
                        _ => return Err(Error::Invalid(format!("error_model: expected random or adversarial, got '{v}'"))),
                    })
                }
                other => return Err(Error::Invalid(format!("line {}: unknown key '{other}'", lineno + 1))),
            }
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    fn need<T: Clone>(v: &Option<T>, key: &str) -> Result<T> {
        v.clone().ok_or_else(|| Error::Invalid(format!("config is missing '{key}'")))
    }

    pub fn experiment(&self) -> Result<ExperimentConfig> {
        let cfg = ExperimentConfig {
            family: Self::need(&self.family, "family")?,
            big_n: Self::need(&self.big_n, "N")?,
            n_list: Self::need(&self.n_list, "n_list")?,
            k_rule: Self::need(&self.k_rule, "k_rule")?,
            trials_per_cell: Self::need(&self.trials, "trials")?,
            master_seed: Self::need(&self.seed, "seed")?,
            success_tol: DEFAULT_SUCCESS_TOL,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// ECC settings: `n_list` and an explicit `k_rule` must hold one value each.
    pub fn ecc(&self) -> Result<EccConfig> {
        let n = match Self::need(&self.n_list, "n_list")?.as_slice() {
            [n] => *n,
            _ => return Err(Error::Invalid("ecc needs exactly one n in n_list".into())),
        };
        let k = match Self::need(&self.k_rule, "k_rule")? {
            KRule::Explicit(ks) if ks.len() == 1 => ks[0],
            _ => return Err(Error::Invalid("ecc needs a single explicit k in k_rule".into())),
        };
        Ok(EccConfig {
            big_n: Self::need(&self.big_n, "N")?,
            n,
            k,
            error_model: self.error_model.unwrap_or(ErrorModel::RandomSigned),
            trials: Self::need(&self.trials, "trials")?,
            master_seed: Self::need(&self.seed, "seed")?,
        })
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Invalid(_) | Error::Bracket { .. } | Error::Budget(_) => EXIT_INVALID,
        Error::Io(_) => EXIT_IO,
        Error::Convergence { .. } | Error::Quadrature(_) | Error::Lp(_) => EXIT_FAILURE,
    }
}

fn emit_table(table: &Table, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(p) => emit_csv(table, p),
        None => table.write(stdout),
    }
}

fn grid_from(text: &str) -> Result<Vec<f64>> {
    parse_list("delta_grid", text)
}

fn execute(cmd: Command, stdout: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Thresholds { family, kind, delta, delta_grid, out, figure } => {
            if let Some(path) = figure {
                let grid = grid_from(delta_grid.as_deref().unwrap_or(DEFAULT_GRID))?;
                let mut curves = Vec::new();
                for (f, k) in [
                    (Family::Simplex, TransitionKind::Weak),
                    (Family::Cross, TransitionKind::Weak),
                    (Family::Simplex, TransitionKind::Strong),
                    (Family::Cross, TransitionKind::Strong),
                ] {
                    curves.push(phase_curve(f, k, &grid)?);
                }
                return emit_svg_phase_diagram(&curves, None, &path);
            }
            match (delta, delta_grid) {
                (Some(d), None) => {
                    writeln!(stdout, "{}", fmt12(rho_threshold(family, kind, d)?))?;
                    Ok(())
                }
                (None, Some(g)) => emit_table(&Table::from_curve(&phase_curve(family, kind, &grid_from(&g)?)?), out.as_deref(), stdout),
                _ => Err(Error::Invalid("give exactly one of --delta or --delta-grid".into())),
            }
        }
        Command::Bound { family, kind, k, n, big_n } => {
            let t = TripleKNN::new(k, n, big_n)?;
            let b = bound(family, kind, t)?;
            let mut table = Table::new(&["family", "kind", "k", "n", "N", "ln_bound", "bound", "ell", "rv_bound"]);
            table.push(vec![
                Value::Text(family.to_string()),
                Value::Text(kind.to_string()),
                Value::Int(k as i64),
                Value::Int(n as i64),
                Value::Int(big_n as i64),
                Value::Real(b.ln_value),
                Value::Real(b.value),
                Value::Int(b.ell.map_or(-1, |l| l as i64)),
                Value::Real(rv_bound(k, n, big_n)?),
            ]);
            table.write(stdout)
        }
        Command::Levelcurve { family, kind, big_n, level, delta_grid, out } => {
            let c = level_curve(family, kind, big_n, level, &grid_from(&delta_grid)?)?;
            let mut table = Table::new(&["delta", "rho"]);
            for (d, r) in c.samples {
                table.push(vec![Value::Real(d), Value::Real(r)]);
            }
            emit_table(&table, out.as_deref(), stdout)
        }
        Command::Angles { kind, family, k, ell, n_total, method } => {
            let kind = match kind {
                AngleArg::Internal => AngleKind::Internal { k, ell },
                AngleArg::External => {
                    let n_total = n_total.ok_or_else(|| Error::Invalid("external angles need --n-total".into()))?;
                    match family {
                        Family::Simplex => AngleKind::ExternalSimplex { ell, n_total },
                        Family::Cross => AngleKind::ExternalCross { ell, n_total },
                    }
                }
            };
            let method = match method {
                MethodArg::Quadrature => AngleMethod::Quadrature,
                MethodArg::Saddlepoint => AngleMethod::Saddlepoint,
                MethodArg::Oracle => AngleMethod::Oracle,
            };
            writeln!(stdout, "{}", fmt12(angle(AngleRequest::new(kind, method)?)?))?;
            Ok(())
        }
        Command::Experiment { config, out } => {
            let file = ConfigFile::load(&config)?;
            let cfg = file.experiment()?;
            let grid = success_grid(&cfg)?;
            let path = out.or(file.out_path.clone());
            match file.format.unwrap_or(OutputFormat::Csv) {
                OutputFormat::Csv => match path {
                    Some(p) => write_atomic(&p, |w| grid.write_csv(w)),
                    None => grid.write_csv(stdout),
                },
                OutputFormat::Svg => {
                    let p = path.ok_or_else(|| Error::Invalid("svg output needs out_path or --out".into()))?;
                    let deltas = match &file.delta_grid {
                        Some(g) => g.clone(),
                        None => grid_from(DEFAULT_GRID)?,
                    };
                    let kind = file.kind.unwrap_or(TransitionKind::Weak);
                    let curve = phase_curve(cfg.family, kind, &deltas)?;
                    emit_svg_phase_diagram(&[curve], Some(&grid), &p)
                }
            }
        }
        Command::Ecc { config, big_n, n, k, trials, seed, model, out } => {
            let cfg = match &config {
                Some(p) => ConfigFile::load(p)?.ecc()?,
                None => EccConfig { big_n, n, k, error_model: model.into(), trials, master_seed: seed },
            };
            let results = ecc_roundtrip(&cfg)?;
            let mut table = Table::new(&["trial", "exact", "solver_failed"]);
            for (i, r) in results.iter().enumerate() {
                table.push(vec![Value::Int(i as i64), Value::Int(r.exact as i64), Value::Int(r.solver_failed as i64)]);
            }
            let exact = results.iter().filter(|r| r.exact).count();
            match out {
                Some(p) => {
                    emit_csv(&table, &p)?;
                    writeln!(stdout, "exact {exact}/{}", results.len())?;
                    Ok(())
                }
                None => table.write(stdout),
            }
        }
        Command::Selftest => selftest(stdout),
    }
}

fn selftest(stdout: &mut dyn Write) -> Result<()> {
    let mut failures = 0;
    let mut check = |name: &str, ok: bool, out: &mut dyn Write| -> Result<()> {
        writeln!(out, "{} {name}", if ok { "PASS" } else { "FAIL" })?;
        failures += !ok as usize;
        Ok(())
    };
    let w = rho_threshold(Family::Simplex, TransitionKind::Weak, 0.5)?;
    check("weak simplex threshold at delta 1/2", (w - 0.5581).abs() <= 1e-3, stdout)?;
    let s = rho_threshold(Family::Cross, TransitionKind::Strong, 0.5)?;
    check("strong cross threshold at delta 1/2", (s - 0.0894).abs() <= 1e-3, stdout)?;
    let b = angle(AngleRequest::new(AngleKind::Internal { k: 0, ell: 2 }, AngleMethod::Oracle)?)?;
    check("internal angle of a triangle", (b - 1.0 / 6.0).abs() <= 1e-9, stdout)?;
    let a = nalgebra::DMatrix::from_row_slice(1, 2, &[1.0, 1.0]);
    let p1 = solve_p1(&a, &[1.0])?;
    check("l1 program on a segment", (p1.objective - 1.0).abs() <= 1e-12 && !p1.is_unique(), stdout)?;
    if failures > 0 {
        return Err(Error::Convergence { what: "selftest", iterations: failures, residual: f64::NAN });
    }
    Ok(())
}

/// Runs the CLI on `argv` (program name first), writing to the given streams.
pub fn run_with<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.to_string().replace('\n', " "));
            exit_code(&e)
        }
    }
}

/// Runs the CLI against the process streams.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
