//! `blaschke-verify`: loads measures, systems and matrices from JSON, runs
//! single checks or seeded random suites, and prints report JSON on stdout.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or a kernel
//! cannot finish, 2 for unreadable or invalid input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use blaschke_core::bounds::{
    check_corollary, check_jensen_h1, check_perturbation_determinant, check_real_line_variant, check_schur_chain,
    check_theorem1, check_theorem2, check_theorem3, check_zero_agreement, summarize, BoundReport, Tolerances,
};
use blaschke_core::dilation::roundtrip_check;
use blaschke_core::json::{rows_to_complex, vec_from_json, MatrixPairJson, PolynomialJson, RealLineJson};
use blaschke_core::suite::{run_suite, ReportRow, SuiteConfig, SuiteKind};
use blaschke_core::{AtomicMeasure, Complex64, ComplexMatrix, ContractionSystem, Error};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

const THREADS_ENV: &str = "BLASCHKE_VERIFY_THREADS";
/// Spectral points used by `verify-system` for the determinant identity.
const SYSTEM_DETERMINANT_POINTS: usize = 10;

#[derive(Parser)]
#[command(
    name = "blaschke-verify",
    version,
    about = "Numerical checks of Blaschke-type bounds on zeros of Cauchy transforms"
)]
struct Cli {
    /// Override a tolerance, e.g. `--tol blaschke=1e-9`. Repeatable.
    #[arg(long = "tol", value_name = "NAME=VAL", global = true, value_parser = parse_tol)]
    tols: Vec<(String, f64)>,
    /// Also write the report JSON to this file.
    #[arg(long, value_name = "PATH", global = true)]
    json_out: Option<PathBuf>,
    /// Write one CSV row per check to this file.
    #[arg(long, value_name = "PATH", global = true)]
    csv_out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Zero bound for a measure: `h = K mu` (direct) or `h = 1 + w K sigma` (shifted).
    VerifyMeasure {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Shifted)]
        mode: Mode,
    },
    /// Zero bound and determinant identity for a system `(A, phi, psi)`.
    VerifySystem { path: PathBuf },
    /// Seeded random suite.
    RandomSuite {
        /// Suite name or `all`.
        #[arg(default_value = "all")]
        which: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        instances: usize,
        #[arg(long, default_value_t = 8)]
        max_atoms: usize,
        #[arg(long, default_value_t = 10)]
        max_dim: usize,
    },
    /// Unitary dilation round trip for a system.
    Dilate {
        path: PathBuf,
        #[arg(long, default_value_t = 1)]
        order: usize,
    },
    /// Jensen / H1 chain for a polynomial with `h(0) = 1`.
    Jensen { path: PathBuf },
    /// Trace-norm bound and Schur chain for a matrix pair `(A, L)`.
    SchurChain { path: PathBuf },
    /// Half-plane variant for atoms on the real line.
    RealLine { path: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Direct,
    Shifted,
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected NAME=VAL, got {s:?}"))?;
    let value: f64 = value.parse().map_err(|e| format!("tolerance {name}: {e}"))?;
    if !(value.is_finite() && value >= 0.0) {
        return Err(format!("tolerance {name} must be finite and non-negative"));
    }
    Ok((name.to_string(), value))
}

/// Failure modes that map to distinct exit codes.
enum Failure {
    Input(String),
    Kernel(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::OffCircle { .. }
            | Error::NonAtomicMeasure
            | Error::EmptyMeasure
            | Error::OutsideDisk { .. }
            | Error::OutsideDomain { .. }
            | Error::NotAContraction { .. }
            | Error::DimensionMismatch { .. }
            | Error::NotSquare { .. }
            | Error::NotNormalized { .. }
            | Error::NotUnitAtOrigin
            | Error::ZeroOnBoundary { .. }
            | Error::InvalidInput(_) => Failure::Input(e.to_string()),
            _ => Failure::Kernel(e.to_string()),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Report document printed on stdout for single-input commands.
#[derive(Serialize)]
struct Document {
    command: &'static str,
    pass: bool,
    summary: blaschke_core::bounds::Summary,
    reports: Vec<BoundReport>,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    suite: &'a str,
    instance: usize,
    check: &'a str,
    lhs: f64,
    rhs: f64,
    slack: f64,
    tol: f64,
    pass: bool,
}

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path) -> Outcome<T> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_measure(path: &Path) -> Outcome<AtomicMeasure> {
    Ok(AtomicMeasure::from_json(&parse(path)?)?)
}

fn load_system(path: &Path) -> Outcome<ContractionSystem> {
    Ok(ContractionSystem::from_json(&parse(path)?)?)
}

fn tolerances(overrides: &[(String, f64)]) -> Outcome<Tolerances> {
    let mut tols = Tolerances::default();
    for (name, value) in overrides {
        tols.set(name, *value)?;
    }
    Ok(tols)
}

/// Deterministic points on `|lambda| = 2`, offset from the real axis.
fn system_lambdas() -> Vec<Complex64> {
    (0..SYSTEM_DETERMINANT_POINTS)
        .map(|k| Complex64::from_polar(2.0, 0.1 + std::f64::consts::TAU * k as f64 / SYSTEM_DETERMINANT_POINTS as f64))
        .collect()
}

fn single(command: &Command, tols: &Tolerances) -> Outcome<(&'static str, Vec<BoundReport>)> {
    Ok(match command {
        Command::VerifyMeasure { path, mode } => {
            let mu = load_measure(path)?;
            match mode {
                Mode::Shifted => ("verify-measure", vec![check_theorem2(&mu, tols)?, check_zero_agreement(&mu, tols)?]),
                // K mu = 1 + w K(shift mu) once mu(T) = 1, so the cross-check runs on the shift
                Mode::Direct => {
                    let corollary = check_corollary(&mu, tols)?;
                    ("verify-measure", vec![corollary, check_zero_agreement(&mu.shift_measure(), tols)?])
                }
            }
        }
        Command::VerifySystem { path } => {
            let s = load_system(path)?;
            (
                "verify-system",
                vec![check_theorem1(&s, tols)?, check_perturbation_determinant(&s, &system_lambdas(), tols)?],
            )
        }
        Command::Dilate { path, order } => {
            let s = load_system(path)?;
            if *order == 0 {
                return Err(Failure::Input("--order must be at least 1".into()));
            }
            ("dilate", vec![roundtrip_check(&s, *order, tols)?])
        }
        Command::Jensen { path } => {
            let p: PolynomialJson = parse(path)?;
            ("jensen", vec![check_jensen_h1(&vec_from_json(&p.coeffs), tols)?])
        }
        Command::SchurChain { path } => {
            let p: MatrixPairJson = parse(path)?;
            let a = ComplexMatrix::from_rows(&rows_to_complex(&p.a))?;
            let l = ComplexMatrix::from_rows(&rows_to_complex(&p.l))?;
            ("schur-chain", vec![check_theorem3(&a, &l, tols)?, check_schur_chain(&a, &l, tols)?])
        }
        Command::RealLine { path } => {
            let p: RealLineJson = parse(path)?;
            let atoms: Vec<(f64, Complex64)> = p.atoms.iter().map(|a| (a.s, a.weight.into())).collect();
            ("real-line", vec![check_real_line_variant(&atoms, tols)?])
        }
        Command::RandomSuite { .. } => unreachable!("suites are handled separately"),
    })
}

fn emit(cli: &Cli, value: &serde_json::Value, rows: &[CsvRow]) -> Outcome<()> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize") + "\n";
    print!("{text}");
    if let Some(path) = &cli.json_out {
        fs::write(path, &text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    if let Some(path) = &cli.csv_out {
        let io = |e: csv::Error| Failure::Input(format!("{}: {e}", path.display()));
        let mut w = csv::Writer::from_path(path).map_err(io)?;
        for row in rows {
            w.serialize(row).map_err(io)?;
        }
        w.flush().map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn csv_row<'a>(suite: &'a str, instance: usize, r: &'a BoundReport) -> CsvRow<'a> {
    CsvRow { suite, instance, check: &r.name, lhs: r.lhs, rhs: r.rhs, slack: r.slack, tol: r.tol, pass: r.pass }
}

fn run(cli: &Cli) -> Outcome<bool> {
    let tols = tolerances(&cli.tols)?;
    if let Command::RandomSuite { which, seed, instances, max_atoms, max_dim } = &cli.command {
        let kinds = SuiteKind::parse_selection(which)?;
        let config = SuiteConfig { seed: *seed, instances: *instances, max_atoms: *max_atoms, max_dim: *max_dim, tols };
        let out = run_suite(&kinds, &config)?;
        for kind in &kinds {
            let s = out.summary_for(*kind);
            eprintln!(
                "{kind}: {} checks, {} failed, {} errors, min slack {}",
                s.total,
                s.failed,
                s.errors,
                s.min_slack.map_or("n/a".to_string(), |m| format!("{m:e}"))
            );
        }
        for f in &out.failures {
            eprintln!("failed: {} instance {}", f.suite, f.index);
        }
        let names: Vec<String> = out.reports.iter().map(|r| r.suite.to_string()).collect();
        let rows: Vec<CsvRow> = out
            .reports
            .iter()
            .zip(&names)
            .map(|(ReportRow { instance, report, .. }, name)| csv_row(name, *instance, report))
            .collect();
        emit(cli, &serde_json::to_value(&out).expect("suite output serializes"), &rows)?;
        return Ok(out.passed());
    }

    let (command, reports) = single(&cli.command, &tols)?;
    let summary = summarize(&reports);
    let pass = summary.failed == 0;
    for r in &reports {
        eprintln!(
            "{}: {} (lhs {:e}, rhs {:e}, slack {:e})",
            r.name,
            if r.pass { "pass" } else { "FAIL" },
            r.lhs,
            r.rhs,
            r.slack
        );
    }
    let rows: Vec<CsvRow> = reports.iter().map(|r| csv_row(command, 0, r)).collect();
    let doc = Document { command, pass, summary, reports: reports.clone() };
    emit(cli, &json!(doc), &rows)?;
    Ok(pass)
}

fn configure_threads() -> Outcome<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Input(format!("{THREADS_ENV} must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Kernel(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match configure_threads().and_then(|()| run(&cli)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Kernel(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
