//! Randomized suites. Instance `i` of a suite is generated from its own
//! stream (see [`crate::sampling`]) and checked independently; results are
//! returned in instance order whatever the worker count.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{
    check_corollary, check_jensen_h1, check_measure_identities, check_perturbation_determinant,
    check_real_line_variant, check_schur_chain, check_theorem1, check_theorem2, check_theorem3, check_zero_agreement,
    BoundReport, Tolerances,
};
use crate::dilation::roundtrip_check;
use crate::error::{Error, Result};
use crate::json::{rows_to_json, vec_to_json, PolynomialJson, RealAtomJson, RealLineJson};
use crate::sampling::{self, InstanceRng};

/// Largest base dimension used by the dilation suite.
pub const DILATION_MAX_DIM: usize = 5;
/// Largest dilation order used by the dilation suite.
pub const DILATION_MAX_ORDER: usize = 10;
/// Spectral points per instance in the determinant suite, all on `|lambda| = 2`.
pub const DETERMINANT_POINTS: usize = 10;
/// Disk points per instance in the measure suite.
pub const MEASURE_POINTS: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteKind {
    Thm1,
    Thm2,
    Thm3,
    Schur,
    Dilation,
    Realline,
    Jensen,
    Determinant,
    Measure,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 9] = [
        SuiteKind::Thm1,
        SuiteKind::Thm2,
        SuiteKind::Thm3,
        SuiteKind::Schur,
        SuiteKind::Dilation,
        SuiteKind::Realline,
        SuiteKind::Jensen,
        SuiteKind::Determinant,
        SuiteKind::Measure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::Thm1 => "thm1",
            SuiteKind::Thm2 => "thm2",
            SuiteKind::Thm3 => "thm3",
            SuiteKind::Schur => "schur",
            SuiteKind::Dilation => "dilation",
            SuiteKind::Realline => "realline",
            SuiteKind::Jensen => "jensen",
            SuiteKind::Determinant => "determinant",
            SuiteKind::Measure => "measure",
        }
    }

    /// Per-suite stream separation. The Schur-chain suite shares the
    /// numerical-range suite stream so both check the same `(A, L)` pairs.
    fn salt(self) -> u64 {
        let kind = if self == SuiteKind::Schur { SuiteKind::Thm3 } else { self };
        0xB1A5_C4E0_0000_0000 | (kind as u64 + 1)
    }

    /// Parses a suite name, or `all`.
    pub fn parse_selection(s: &str) -> Result<Vec<SuiteKind>> {
        if s == "all" {
            return Ok(Self::ALL.to_vec());
        }
        s.parse().map(|k| vec![k])
    }
}

impl fmt::Display for SuiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            let names: Vec<_> = Self::ALL.iter().map(|k| k.name()).collect();
            Error::InvalidInput(format!("unknown suite {s:?}; expected one of {} or all", names.join(", ")))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub instances: usize,
    pub max_atoms: usize,
    pub max_dim: usize,
    pub tols: Tolerances,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { seed: 42, instances: 100, max_atoms: 8, max_dim: 10, tols: Tolerances::default() }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.instances == 0 || self.max_atoms == 0 || self.max_dim == 0 {
            return Err(Error::InvalidInput("instances, max_atoms and max_dim must be at least 1".into()));
        }
        Ok(())
    }
}

/// One generated instance with its reports, or the error it raised.
#[derive(Clone, Debug, Serialize)]
pub struct InstanceOutcome {
    pub suite: SuiteKind,
    pub index: usize,
    /// Enough data to replay the instance.
    pub input: Value,
    pub reports: Vec<BoundReport>,
    pub error: Option<String>,
}

impl InstanceOutcome {
    pub fn failed(&self) -> bool {
        self.error.is_some() || self.reports.iter().any(|r| !r.pass)
    }
}

/// Flattened report row.
#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub suite: SuiteKind,
    pub instance: usize,
    #[serde(flatten)]
    pub report: BoundReport,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SuiteSummary {
    /// Reports plus instances that raised an error.
    pub total: usize,
    pub failed: usize,
    pub min_slack: Option<f64>,
    pub errors: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteOutput {
    pub config: SuiteConfig,
    pub suites: Vec<SuiteKind>,
    pub reports: Vec<ReportRow>,
    pub summary: SuiteSummary,
    pub failures: Vec<InstanceOutcome>,
}

impl SuiteOutput {
    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// Summary restricted to one suite.
    pub fn summary_for(&self, kind: SuiteKind) -> SuiteSummary {
        let reports: Vec<&BoundReport> = self.reports.iter().filter(|r| r.suite == kind).map(|r| &r.report).collect();
        let errors = self.failures.iter().filter(|f| f.suite == kind && f.error.is_some()).count();
        summarize_rows(&reports, errors)
    }
}

fn summarize_rows(reports: &[&BoundReport], errors: usize) -> SuiteSummary {
    let s = crate::bounds::summarize(reports.iter().copied());
    SuiteSummary { total: s.total + errors, failed: s.failed + errors, min_slack: s.min_slack, errors }
}

fn wrap(suite: SuiteKind, index: usize, input: Value, reports: Result<Vec<BoundReport>>) -> InstanceOutcome {
    match reports {
        Ok(reports) => InstanceOutcome { suite, index, input, reports, error: None },
        Err(e) => InstanceOutcome { suite, index, input, reports: vec![], error: Some(e.to_string()) },
    }
}

/// Generates and checks instance `index` of `kind`.
pub fn run_instance(kind: SuiteKind, config: &SuiteConfig, index: usize) -> InstanceOutcome {
    let mut rng = sampling::instance_rng(config.seed, kind.salt(), index as u64);
    let tols = &config.tols;
    match kind {
        SuiteKind::Thm1 => {
            let s = sampling::contraction_system(&mut rng, config.max_dim);
            let input = serde_json::to_value(s.to_json()).expect("serializable");
            wrap(kind, index, input, check_theorem1(&s, tols).map(|r| vec![r]))
        }
        SuiteKind::Thm2 => {
            let sigma = sampling::atomic_measure(&mut rng, config.max_atoms);
            let mu = sampling::normalized_measure(&mut rng, config.max_atoms);
            let input = json!({"sigma": sigma.to_json(), "mu": mu.to_json()});
            let reports = (|| {
                Ok(vec![
                    check_theorem2(&sigma, tols)?,
                    check_zero_agreement(&sigma, tols)?,
                    check_corollary(&mu, tols)?,
                ])
            })();
            wrap(kind, index, input, reports)
        }
        SuiteKind::Thm3 | SuiteKind::Schur => {
            let (a, l) = sampling::matrix_pair(&mut rng, config.max_dim);
            let input = json!({"A": rows_to_json(&a.to_rows()), "L": rows_to_json(&l.to_rows())});
            let report =
                if kind == SuiteKind::Thm3 { check_theorem3(&a, &l, tols) } else { check_schur_chain(&a, &l, tols) };
            wrap(kind, index, input, report.map(|r| vec![r]))
        }
        SuiteKind::Dilation => {
            let s = sampling::contraction_system(&mut rng, config.max_dim.min(DILATION_MAX_DIM));
            let order = rng.random_range(1..=DILATION_MAX_ORDER);
            let input = json!({"system": s.to_json(), "order": order});
            wrap(kind, index, input, roundtrip_check(&s, order, tols).map(|r| vec![r]))
        }
        SuiteKind::Realline => {
            let atoms = sampling::real_line_atoms(&mut rng, config.max_atoms);
            let input = serde_json::to_value(RealLineJson {
                atoms: atoms.iter().map(|&(s, c)| RealAtomJson { s, weight: c.into() }).collect(),
            })
            .expect("serializable");
            wrap(kind, index, input, check_real_line_variant(&atoms, tols).map(|r| vec![r]))
        }
        SuiteKind::Jensen => {
            let coeffs = sampling::normalized_polynomial(&mut rng, config.max_atoms);
            let input = serde_json::to_value(PolynomialJson { coeffs: vec_to_json(&coeffs) }).expect("serializable");
            wrap(kind, index, input, check_jensen_h1(&coeffs, tols).map(|r| vec![r]))
        }
        SuiteKind::Determinant => {
            let s = sampling::contraction_system(&mut rng, config.max_dim);
            let lambdas = determinant_points(&mut rng);
            let input = json!({"system": s.to_json(), "lambdas": vec_to_json(&lambdas)});
            wrap(kind, index, input, check_perturbation_determinant(&s, &lambdas, tols).map(|r| vec![r]))
        }
        SuiteKind::Measure => {
            let mu = sampling::mixed_measure(&mut rng, config.max_atoms);
            let ws = measure_points(&mut rng);
            let input = json!({"measure": mu.to_json(), "points": vec_to_json(&ws)});
            wrap(kind, index, input, check_measure_identities(&mu, &ws, tols).map(|r| vec![r]))
        }
    }
}

fn determinant_points(rng: &mut InstanceRng) -> Vec<Complex64> {
    (0..DETERMINANT_POINTS).map(|_| Complex64::from_polar(2.0, rng.random::<f64>() * std::f64::consts::TAU)).collect()
}

/// Uniform points in `|w| < 0.95`, avoiding a tiny disk around the origin
/// where the difference quotient of the backward shift loses digits.
fn measure_points(rng: &mut InstanceRng) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(MEASURE_POINTS);
    while out.len() < MEASURE_POINTS {
        let w = sampling::disk_point(rng, 0.95);
        if w.norm() >= 1e-3 {
            out.push(w);
        }
    }
    out
}

/// Runs `config.instances` instances of every suite in `kinds` on the
/// current rayon pool.
pub fn run_suite(kinds: &[SuiteKind], config: &SuiteConfig) -> Result<SuiteOutput> {
    config.validate()?;
    let jobs: Vec<(SuiteKind, usize)> =
        kinds.iter().flat_map(|&k| (0..config.instances).map(move |i| (k, i))).collect();
    let outcomes: Vec<InstanceOutcome> = jobs.par_iter().map(|&(k, i)| run_instance(k, config, i)).collect();

    let mut reports = Vec::new();
    let mut failures = Vec::new();
    let mut errors = 0;
    for o in outcomes {
        if o.error.is_some() {
            errors += 1;
        }
        reports.extend(o.reports.iter().map(|r| ReportRow { suite: o.suite, instance: o.index, report: r.clone() }));
        if o.failed() {
            failures.push(o);
        }
    }
    let all: Vec<&BoundReport> = reports.iter().map(|r| &r.report).collect();
    let summary = summarize_rows(&all, errors);
    Ok(SuiteOutput { config: config.clone(), suites: kinds.to_vec(), reports, summary, failures })
}
