//! Inequality checks. Each returns a [`BoundReport`] with `slack = rhs - lhs`
//! and `pass = slack >= -tol`.
//!
//! Checks made of several inequalities (chains, or a bound plus a residual)
//! record every link in `details.links`. The top-level fields describe the
//! first link unless another link fails, in which case they describe the
//! worst failing link (smallest `slack + tol`); either way `pass` holds
//! exactly when every link passes. A residual `r` that must stay below `t`
//! is encoded as the link `r <= 0` with tolerance `t`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{
    cluster_points, dot, eigenvalues_clustered, operator_norm, poly_eval, poly_roots, schur_decompose, trace_norm,
    trim_polynomial, ComplexMatrix, NumericalRange, DEFAULT_ANGLES, DEFAULT_CLUSTER_TOL,
};
use crate::measure::AtomicMeasure;
use crate::operator_model::{ContractionSystem, CONTRACTION_TOL};
use crate::transform::{eval_k, CauchyFunction};
use crate::zeros::{
    blaschke_sum, match_zero_sets, zeros_via_argument_principle, zeros_via_l, zeros_via_numerator_roots, ZeroMethod,
    ZeroSet, DEFAULT_MAX_DEPTH, DEFAULT_RADIUS,
};

/// Mass normalization required by the normalized checks.
pub const NORMALIZATION_TOL: f64 = 1e-12;
const BOUNDARY_SAMPLES: usize = 1 << 12;
const MAX_QUADRATURE_POINTS: usize = 1 << 20;
const QUADRATURE_CHANGE: f64 = 1e-9;
const MIN_BOUNDARY_MODULUS: f64 = 1e-8;

/// Named tolerances. Names are accepted by [`Tolerances::set`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// Blaschke sum against `||phi|| ||psi||` or a total variation.
    pub blaschke: f64,
    /// `sum dist(lambda, Num A) <= ||L - A||_tr`.
    pub theorem3: f64,
    /// Each link of the Schur chain.
    pub schur: f64,
    /// Each link of the Jensen / H^1 chain.
    pub jensen: f64,
    /// Real-line bound.
    pub realline: f64,
    /// Relative residual of `h` at reported real-line zeros.
    pub residual: f64,
    /// Unitarity residual of a dilation, per dimension.
    pub unitarity: f64,
    /// Compression and moment identities of a dilation.
    pub moment: f64,
    /// Taylor coefficients of `h` against the reconstructed function.
    pub taylor: f64,
    /// Total variation of an extracted measure against `||phi|| ||psi||`.
    pub tv: f64,
    /// Pairing distance of zero sets from different methods.
    pub zeros: f64,
    /// Relative agreement of perturbation-determinant evaluations.
    pub determinant: f64,
    /// Pointwise measure-calculus identities.
    pub measure: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            blaschke: 1e-7,
            theorem3: 1e-7,
            schur: 1e-9,
            jensen: 1e-8,
            realline: 1e-8,
            residual: 1e-8,
            unitarity: 1e-10,
            moment: 1e-10,
            taylor: 1e-9,
            tv: 1e-10,
            zeros: 1e-7,
            determinant: 1e-11,
            measure: 1e-10,
        }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 13] = [
        "blaschke",
        "theorem3",
        "schur",
        "jensen",
        "realline",
        "residual",
        "unitarity",
        "moment",
        "taylor",
        "tv",
        "zeros",
        "determinant",
        "measure",
    ];

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value >= 0.0 && value.is_finite()) {
            return Err(Error::InvalidInput(format!("tolerance {name} must be finite and nonnegative, got {value}")));
        }
        let slot = match name {
            "blaschke" => &mut self.blaschke,
            "theorem3" => &mut self.theorem3,
            "schur" => &mut self.schur,
            "jensen" => &mut self.jensen,
            "realline" => &mut self.realline,
            "residual" => &mut self.residual,
            "unitarity" => &mut self.unitarity,
            "moment" => &mut self.moment,
            "taylor" => &mut self.taylor,
            "tv" => &mut self.tv,
            "zeros" => &mut self.zeros,
            "determinant" => &mut self.determinant,
            "measure" => &mut self.measure,
            _ => {
                return Err(Error::InvalidInput(format!(
                    "unknown tolerance {name:?}; expected one of {}",
                    Self::NAMES.join(", ")
                )))
            }
        };
        *slot = value;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub tol: f64,
    pub pass: bool,
    pub details: Value,
}

impl BoundReport {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64, details: Value) -> Self {
        let slack = rhs - lhs;
        Self { name: name.into(), lhs, rhs, slack, tol, pass: slack >= -tol, details }
    }

    /// Report over several links; see the module docs.
    pub fn chain(name: impl Into<String>, links: &[Link], mut details: Value) -> Self {
        let name = name.into();
        let margin = |l: &Link| {
            let m = l.rhs - l.lhs + l.tol;
            if m.is_nan() {
                f64::NEG_INFINITY
            } else {
                m
            }
        };
        let Some(worst) = links.iter().min_by(|a, b| margin(a).total_cmp(&margin(b))) else {
            return Self::new(name, 0.0, 0.0, 0.0, details);
        };
        let tight = if margin(worst) < 0.0 { worst } else { &links[0] };
        let rendered: Vec<Value> = links
            .iter()
            .map(|l| {
                let slack = l.rhs - l.lhs;
                json!({"label": l.label, "lhs": l.lhs, "rhs": l.rhs, "slack": slack, "tol": l.tol, "pass": slack >= -l.tol})
            })
            .collect();
        if let Value::Object(map) = &mut details {
            map.insert("reported_link".into(), json!(tight.label));
            map.insert("links".into(), Value::Array(rendered));
        } else {
            details = json!({"reported_link": tight.label, "links": rendered, "info": details});
        }
        Self::new(name, tight.lhs, tight.rhs, tight.tol, details)
    }
}

/// One inequality `lhs <= rhs + tol` inside a chained report.
#[derive(Clone, Debug, PartialEq)]
pub struct Link {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    pub tol: f64,
}

impl Link {
    pub fn new(label: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self { label: label.into(), lhs, rhs, tol }
    }

    /// `residual <= 0` within `tol`.
    pub fn residual(label: impl Into<String>, residual: f64, tol: f64) -> Self {
        Self::new(label, residual, 0.0, tol)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub failed: usize,
    /// `None` when there are no reports.
    pub min_slack: Option<f64>,
}

pub fn summarize<'a>(reports: impl IntoIterator<Item = &'a BoundReport>) -> Summary {
    let mut s = Summary { total: 0, failed: 0, min_slack: None };
    for r in reports {
        s.total += 1;
        if !r.pass {
            s.failed += 1;
        }
        s.min_slack = Some(match s.min_slack {
            Some(m) if !(r.slack < m) => m,
            _ => r.slack,
        });
    }
    s
}

fn zero_details(z: &ZeroSet) -> Value {
    json!({"zeros": z.zeros, "method": z.method})
}

/// Blaschke sum of the zeros of `h` against `||phi|| ||psi||`.
pub fn check_theorem1(s: &ContractionSystem, tols: &Tolerances) -> Result<BoundReport> {
    let norm = operator_norm(s.a());
    if norm > 1.0 + CONTRACTION_TOL {
        return Err(Error::NotAContraction { norm });
    }
    let zeros = zeros_via_l(s)?;
    let lhs = blaschke_sum(&zeros);
    let rhs = s.norm_product();
    let details = json!({
        "lhs": "Blaschke sum of reciprocal eigenvalues of L outside the closed disk",
        "rhs": "||phi|| ||psi||",
        "dim": s.dim(),
        "operator_norm": norm,
        "zeros": zero_details(&zeros),
    });
    Ok(BoundReport::new("theorem1", lhs, rhs, tols.blaschke, details))
}

fn shifted_zeros(sigma: &AtomicMeasure) -> Result<ZeroSet> {
    if sigma.atoms().is_empty() {
        return Ok(ZeroSet { zeros: vec![], method: ZeroMethod::ReciprocalEigenvalue, radius: 1.0 });
    }
    zeros_via_l(&ContractionSystem::from_measure(sigma)?)
}

/// Blaschke sum of `h = 1 + w K sigma` against `||sigma||`, an upper bound
/// for `||Bh||_K`.
pub fn check_theorem2(sigma: &AtomicMeasure, tols: &Tolerances) -> Result<BoundReport> {
    if !sigma.is_atomic() {
        return Err(Error::NonAtomicMeasure);
    }
    let zeros = shifted_zeros(sigma)?;
    let details = json!({
        "lhs": "Blaschke sum of h = 1 + w K sigma",
        "rhs": "total variation of sigma (upper bound surrogate for ||Bh||_K)",
        "atoms": sigma.atoms().len(),
        "zeros": zero_details(&zeros),
    });
    Ok(BoundReport::new("theorem2", blaschke_sum(&zeros), sigma.total_variation(), tols.blaschke, details))
}

/// Blaschke sum of `h = K mu` with `mu(T) = 1` against `||mu||`, together
/// with `||shift mu|| <= ||mu||`.
pub fn check_corollary(mu: &AtomicMeasure, tols: &Tolerances) -> Result<BoundReport> {
    let mass = mu.mass();
    if (mass - 1.0).norm() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized { re: mass.re, im: mass.im });
    }
    let zeros = zeros_via_numerator_roots(&CauchyFunction::direct(mu.clone()))?;
    let lhs = blaschke_sum(&zeros);
    let rhs = mu.total_variation();
    let shifted = check_theorem2(&mu.shift_measure(), tols)?;
    let links = [
        Link::new("blaschke_sum <= ||mu||", lhs, rhs, tols.blaschke),
        Link::new("||shift mu|| <= ||mu||", shifted.rhs, rhs, tols.blaschke),
    ];
    let details = json!({
        "lhs": "Blaschke sum of h = K mu (numerator roots)",
        "rhs": "total variation of mu (upper bound surrogate for ||h||_K)",
        "shifted_rhs": shifted.rhs,
        "zeros": zero_details(&zeros),
    });
    Ok(BoundReport::chain("corollary", &links, details))
}

fn check_dims(a: &ComplexMatrix, l: &ComplexMatrix) -> Result<usize> {
    let n = a.ensure_square()?;
    let m = l.ensure_square()?;
    if n != m {
        return Err(Error::DimensionMismatch { expected: n, got: m });
    }
    Ok(n)
}

/// `sum dist(lambda, Num A) <= ||L - A||_tr` over eigenvalue clusters of `L`.
pub fn check_theorem3(a: &ComplexMatrix, l: &ComplexMatrix, tols: &Tolerances) -> Result<BoundReport> {
    check_dims(a, l)?;
    let range = NumericalRange::new(a, DEFAULT_ANGLES);
    let clusters = eigenvalues_clustered(l, DEFAULT_CLUSTER_TOL)?;
    let lhs: f64 = clusters.iter().map(|c| c.multiplicity as f64 * range.distance(c.center)).sum();
    let rhs = trace_norm(&(l - a));
    let details = json!({
        "lhs": "sum over eigenvalue clusters of L of multiplicity * dist(center, Num(A))",
        "rhs": "trace norm of L - A",
        "dim": a.nrows(),
        "clusters": clusters.len(),
    });
    Ok(BoundReport::new("theorem3", lhs, rhs, tols.theorem3, details))
}

/// The chain behind the trace-norm bound, evaluated in a Schur basis
/// `{g_n}` of `L`:
/// `sum dist(lambda_n, Num A) <= sum |lambda_n - <A g_n, g_n>|
///  <= sum |<(L - A) g_n, g_n>| <= ||L - A||_tr`.
pub fn check_schur_chain(a: &ComplexMatrix, l: &ComplexMatrix, tols: &Tolerances) -> Result<BoundReport> {
    let n = check_dims(a, l)?;
    let schur = schur_decompose(l)?;
    let range = NumericalRange::new(a, DEFAULT_ANGLES);
    let diff = l - a;
    let (mut dist, mut gap, mut middle) = (0.0, 0.0, 0.0);
    for k in 0..n {
        let g = schur.q.column(k);
        let lambda = schur.t[(k, k)];
        dist += range.distance(lambda);
        gap += (lambda - dot(&a.matvec(&g), &g)).norm();
        middle += dot(&diff.matvec(&g), &g).norm();
    }
    let tr = trace_norm(&diff);
    let links = [
        Link::new("sum dist(lambda_n, Num A) <= sum |lambda_n - <A g_n, g_n>|", dist, gap, tols.schur),
        Link::new("sum |lambda_n - <A g_n, g_n>| <= sum |<(L - A) g_n, g_n>|", gap, middle, tols.schur),
        Link::new("sum |<(L - A) g_n, g_n>| <= ||L - A||_tr", middle, tr, tols.schur),
    ];
    let details = json!({
        "dist_sum": dist,
        "diagonal_gap_sum": gap,
        "middle": middle,
        "trace_norm": tr,
        "schur_lower_residual": schur.lower_residual(),
    });
    Ok(BoundReport::chain("schur-chain", &links, details))
}

/// Boundary means of `log|h|`, `|h|` and `|h - 1|` by the trapezoid rule.
fn boundary_means(coeffs: &[Complex64], points: usize) -> [f64; 3] {
    let mut acc = [0.0; 3];
    for k in 0..points {
        let h = poly_eval(coeffs, Complex64::from_polar(1.0, TAU * k as f64 / points as f64));
        acc[0] += h.norm().ln();
        acc[1] += h.norm();
        acc[2] += (h - 1.0).norm();
    }
    acc.map(|x| x / points as f64)
}

/// The Jensen / H^1 chain for a polynomial `h` with `h(0) = 1` (ascending
/// coefficients):
/// `sum (1/|z| - 1) <= exp(int log|h| dm) - 1 <= ||h||_1 - 1 <= ||h - 1||_1`.
pub fn check_jensen_h1(coeffs: &[Complex64], tols: &Tolerances) -> Result<BoundReport> {
    if coeffs.is_empty() || (coeffs[0] - 1.0).norm() > NORMALIZATION_TOL {
        return Err(Error::NotUnitAtOrigin);
    }
    let coeffs = trim_polynomial(coeffs, 1e-14);
    let min_modulus = (0..BOUNDARY_SAMPLES)
        .map(|k| poly_eval(&coeffs, Complex64::from_polar(1.0, TAU * k as f64 / BOUNDARY_SAMPLES as f64)).norm())
        .fold(f64::INFINITY, f64::min);
    if min_modulus <= MIN_BOUNDARY_MODULUS {
        return Err(Error::ZeroOnBoundary { min_modulus });
    }

    let mut points = BOUNDARY_SAMPLES;
    let mut means = boundary_means(&coeffs, points);
    loop {
        if points * 2 > MAX_QUADRATURE_POINTS {
            return Err(Error::QuadratureNoConvergence { change: f64::NAN });
        }
        let next = boundary_means(&coeffs, points * 2);
        let change = means.iter().zip(&next).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        points *= 2;
        means = next;
        if change < QUADRATURE_CHANGE {
            break;
        }
        if points * 2 > MAX_QUADRATURE_POINTS {
            return Err(Error::QuadratureNoConvergence { change });
        }
    }

    let roots = poly_roots(&coeffs)?;
    let inside: Vec<Complex64> = roots.into_iter().filter(|z| z.norm() < 1.0).collect();
    let blaschke: f64 = inside.iter().map(|z| 1.0 / z.norm() - 1.0).sum();
    let [log_mean, h1, dev] = means;
    let jensen = log_mean.exp() - 1.0;
    let links = [
        Link::new("blaschke_sum <= exp(int log|h|) - 1", blaschke, jensen, tols.jensen),
        Link::new("exp(int log|h|) - 1 <= ||h||_1 - 1", jensen, h1 - 1.0, tols.jensen),
        Link::new("||h||_1 - 1 <= ||h - 1||_1", h1 - 1.0, dev, tols.jensen),
    ];
    let details = json!({
        "blaschke_sum": blaschke,
        "jensen_term": jensen,
        "h1_norm_minus_one": h1 - 1.0,
        "h1_norm_of_h_minus_one": dev,
        "quadrature_points": points,
        "zeros_inside": inside.len(),
        "min_boundary_modulus": min_modulus,
    });
    Ok(BoundReport::chain("jensen-h1", &links, details))
}

/// Real-line analogue for `h(l) = sum c_j / (s_j - l)` with `sum c_j = 1`:
/// `sum_{Im l > 0, h(l) = 0} Im l <= sum |s_j| |c_j|`.
///
/// Uses `A = diag(s_j)`, `phi_j = sqrt|s_j c_j|`,
/// `psi_j = conj(phase(s_j c_j)) sqrt|s_j c_j|` over atoms with
/// `s_j c_j != 0`. Then `det(L - l) = -l h(l) prod (s_j - l)` for
/// `L = A - phi psi*`, so the non-real eigenvalues of `L` are exactly the
/// non-real zeros of `h`, and `||L - A||_tr = sum |s_j| |c_j|`.
pub fn check_real_line_variant(atoms: &[(f64, Complex64)], tols: &Tolerances) -> Result<BoundReport> {
    if atoms.iter().any(|(s, c)| !s.is_finite() || !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::InvalidInput("real-line atoms must be finite".into()));
    }
    let mass: Complex64 = atoms.iter().map(|a| a.1).sum();
    if (mass - 1.0).norm() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized { re: mass.re, im: mass.im });
    }
    let active: Vec<(f64, Complex64)> =
        atoms.iter().copied().filter(|&(s, c)| s * c != Complex64::new(0.0, 0.0)).collect();
    let rhs: f64 = atoms.iter().map(|(s, c)| s.abs() * c.norm()).sum();

    let mut zeros = Vec::new();
    let mut residual = 0.0f64;
    if !active.is_empty() {
        let a = ComplexMatrix::from_diagonal(&active.iter().map(|&(s, _)| Complex64::new(s, 0.0)).collect::<Vec<_>>());
        let phi: Vec<Complex64> = active.iter().map(|&(s, c)| Complex64::new((s * c).norm().sqrt(), 0.0)).collect();
        let psi: Vec<Complex64> = active
            .iter()
            .map(|&(s, c)| {
                let sc = s * c;
                (sc / sc.norm()).conj() * sc.norm().sqrt()
            })
            .collect();
        let l = &a - &ComplexMatrix::outer(&phi, &psi);
        let eigs = schur_decompose(&l)?.eigenvalues();
        let radius = DEFAULT_CLUSTER_TOL * operator_norm(&l).max(1.0);
        for c in cluster_points(&eigs, radius) {
            if c.center.im > tols.realline {
                let (value, scale) = atoms.iter().fold((Complex64::new(0.0, 0.0), 0.0), |(v, m), &(s, w)| {
                    let t = w / (s - c.center);
                    (v + t, m + t.norm())
                });
                residual = residual.max(value.norm() / scale.max(f64::MIN_POSITIVE));
                zeros.push(c);
            }
        }
    }
    let lhs: f64 = zeros.iter().map(|c| c.multiplicity as f64 * c.center.im).sum();
    let links = [
        Link::new("sum Im(lambda) <= ||s mu(ds)||", lhs, rhs, tols.realline),
        Link::residual("relative |h(lambda)| at reported zeros", residual, tols.residual),
    ];
    let details = json!({
        "lhs": "sum of Im(lambda) over zeros of h in the upper half-plane (eigenvalues of L)",
        "rhs": "sum |s_j| |c_j|",
        "zeros": zeros.iter().map(|c| json!({"re": c.center.re, "im": c.center.im, "multiplicity": c.multiplicity})).collect::<Vec<_>>(),
        "max_relative_residual": residual,
    });
    Ok(BoundReport::chain("real-line", &links, details))
}

/// Cross-validates the three zero finders on `h = 1 + w K sigma`:
/// reciprocal eigenvalues of `L`, numerator roots and the argument
/// principle. Sets are compared inside the disk searched by the argument
/// principle; Blaschke sums of the eigenvalue and root methods are compared
/// over the whole disk.
pub fn check_zero_agreement(sigma: &AtomicMeasure, tols: &Tolerances) -> Result<BoundReport> {
    if !sigma.is_atomic() {
        return Err(Error::NonAtomicMeasure);
    }
    let f = CauchyFunction::shifted(sigma.clone());
    let via_l = shifted_zeros(sigma)?;
    let via_roots = zeros_via_numerator_roots(&f)?;
    let via_contour = zeros_via_argument_principle(&f, DEFAULT_RADIUS, DEFAULT_MAX_DEPTH)?;
    let r = via_contour.radius;
    let distance = |a: &ZeroSet, b: &ZeroSet| match_zero_sets(&a.restricted(r), &b.restricted(r), tols.zeros);
    let l_contour = distance(&via_l, &via_contour).unwrap_or(f64::INFINITY);
    let l_roots = distance(&via_l, &via_roots).unwrap_or(f64::INFINITY);
    let roots_contour = distance(&via_roots, &via_contour).unwrap_or(f64::INFINITY);
    let sum_gap = (blaschke_sum(&via_l) - blaschke_sum(&via_roots)).abs();
    let contour_gap = (blaschke_sum(&via_l.restricted(r)) - blaschke_sum(&via_contour)).abs();
    let links = [
        Link::residual("pairing distance: eigenvalues vs argument principle", l_contour, tols.zeros),
        Link::residual("pairing distance: eigenvalues vs numerator roots", l_roots, tols.zeros),
        Link::residual("pairing distance: numerator roots vs argument principle", roots_contour, tols.zeros),
        Link::residual("|Blaschke sum difference|: eigenvalues vs numerator roots", sum_gap, 0.1 * tols.zeros),
        Link::residual("|Blaschke sum difference|: eigenvalues vs argument principle", contour_gap, 0.1 * tols.zeros),
    ];
    let details = json!({
        "radius": r,
        "reciprocal_eigenvalue": via_l.zeros,
        "numerator_roots": via_roots.zeros,
        "argument_principle": via_contour.zeros,
    });
    Ok(BoundReport::chain("zeros-agree", &links, details))
}

/// Agreement of `1 + psi* (lambda - A)^{-1} phi`, the LU determinant
/// `det(I + phi psi* (lambda - A)^{-1})` and `h(1 / lambda)` at each `lambda`
/// (all `|lambda| > 1`), relative to `max(1, |value|)`.
pub fn check_perturbation_determinant(
    s: &ContractionSystem,
    lambdas: &[Complex64],
    tols: &Tolerances,
) -> Result<BoundReport> {
    let mut worst = 0.0f64;
    for &lambda in lambdas {
        let d = s.perturbation_determinant(lambda)?;
        let h = s.eval_h_resolvent(lambda.inv())?;
        let scale = d.rank_one.norm().max(d.full.norm()).max(h.norm()).max(1.0);
        let spread = (d.rank_one - d.full).norm().max((d.rank_one - h).norm()).max((d.full - h).norm());
        worst = worst.max(spread / scale);
    }
    let links = [Link::residual("max relative spread of the three evaluations", worst, tols.determinant)];
    let details = json!({"points": lambdas.len(), "max_relative_spread": worst});
    Ok(BoundReport::chain("determinant", &links, details))
}

/// Pointwise identities of the measure calculus at the points `ws` (all in
/// the open disk, nonzero):
/// `K(shift mu)(w) = (K mu(w) - K mu(0)) / w`;
/// `K(inverse_shift(shift mu, mu(T))) = K mu`;
/// `K(reflect mu)(w) = sum c_j / (1 - w zeta_j)`;
/// `K(conj mu)(w) = conj(K mu(conj w))`;
/// and `||shift mu|| <= ||mu||`.
pub fn check_measure_identities(mu: &AtomicMeasure, ws: &[Complex64], tols: &Tolerances) -> Result<BoundReport> {
    let shifted = mu.shift_measure();
    let rebuilt = shifted.inverse_shift(mu.mass())?;
    let reflected = mu.reflect_measure();
    let conjugated = mu.conjugate();
    let k0 = eval_k(mu, Complex64::new(0.0, 0.0))?;
    let mut errors = [0.0f64; 4];
    for &w in ws {
        if w == Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidInput("measure identities need nonzero sample points".into()));
        }
        let k = eval_k(mu, w)?;
        let direct_reflect: Complex64 =
            mu.atoms().iter().map(|&(p, c)| c / (Complex64::new(1.0, 0.0) - w * p.value())).sum::<Complex64>()
                + mu.lebesgue();
        let found = [
            (eval_k(&shifted, w)? - (k - k0) / w).norm(),
            (eval_k(&rebuilt, w)? - k).norm(),
            (eval_k(&reflected, w)? - direct_reflect).norm(),
            (eval_k(&conjugated, w)? - eval_k(mu, w.conj())?.conj()).norm(),
        ];
        for (e, f) in errors.iter_mut().zip(found) {
            *e = e.max(f);
        }
    }
    let links = [
        Link::new("||shift mu|| <= ||mu||", shifted.total_variation(), mu.total_variation(), tols.measure),
        Link::residual("backward shift: K(shift mu) = B K mu", errors[0], tols.measure),
        Link::residual("inverse shift restores K mu", errors[1], tols.measure),
        Link::residual("reflection", errors[2], tols.measure),
        Link::residual("conjugation symmetry", errors[3], tols.measure),
    ];
    let details = json!({"points": ws.len(), "atoms": mu.atoms().len()});
    Ok(BoundReport::chain("measure-identities", &links, details))
}
