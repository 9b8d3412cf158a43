//! Finite unitary dilations and the spectral measures they carry.
//!
//! For a contraction `A` on `C^n` and an order `N >= 1`, [`dilate`] builds the
//! `(N+1) x (N+1)` block unitary
//!
//! ```text
//! [ A    0  ...  0   D_A* ]
//! [ D_A  0  ...  0   -A*  ]
//! [ 0    I        0   0   ]
//! [         ...           ]
//! [ 0    0  ...  I    0   ]
//! ```
//!
//! with defects `D_A = (I - A*A)^{1/2}` and `D_A* = (I - AA*)^{1/2}`. A vector
//! leaving block 0 through `D_A` needs `N + 1` steps to return, so the
//! `(0, 0)` block of `U^k` is `A^k` for every `k <= N`.

use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::bounds::{BoundReport, Link, Tolerances};
use crate::error::{Error, Result};
use crate::linalg::{cluster_points, dot, norm2, operator_norm, psd_sqrt_with_floor, schur_decompose, ComplexMatrix};
use crate::measure::{AtomicMeasure, UnitPoint};
use crate::operator_model::{ContractionSystem, CONTRACTION_TOL};
use crate::transform::eval_k;

/// Eigenvalues of `I - A*A` at or below this are treated as zero, so that a
/// unitary `A` gets exactly vanishing defects.
pub const DEFECT_FLOOR: f64 = 1e-13;
/// Largest `|T_ij|`, `i < j`, tolerated in the Schur form of a dilation.
pub const DIAGONALIZATION_TOL: f64 = 1e-8;
/// Eigenvalues of the dilation closer than this share one atom.
pub const ATOM_CLUSTER_TOL: f64 = 1e-8;
/// Largest tolerated `| |lambda| - 1 |` for eigenvalues of the dilation.
pub const UNIMODULAR_TOL: f64 = 1e-9;
/// Weights below this multiple of `||phi|| ||psi||` are dropped.
pub const NEGLIGIBLE_WEIGHT: f64 = 1e-14;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Debug)]
pub struct DilationResult {
    pub u: ComplexMatrix,
    /// Dimension `n` of the original space, embedded as block 0.
    pub base_dim: usize,
    /// Order `N` up to which powers compress to powers of `A`.
    pub order: usize,
    pub defect_a: ComplexMatrix,
    pub defect_a_star: ComplexMatrix,
    a: ComplexMatrix,
}

impl DilationResult {
    pub fn dim(&self) -> usize {
        self.u.nrows()
    }

    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }

    /// Isometric embedding of `C^n` as block 0.
    pub fn embed(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim()];
        out[..v.len()].copy_from_slice(v);
        out
    }

    /// `||U*U - I||_F`.
    pub fn unitarity_residual(&self) -> f64 {
        self.u.unitarity_residual()
    }

    /// `max |block00(U^k) - A^k|` for `k = 0..=order`.
    pub fn compression_errors(&self) -> Vec<f64> {
        let n = self.base_dim;
        let mut uk = ComplexMatrix::identity(self.dim());
        let mut ak = ComplexMatrix::identity(n);
        let mut out = Vec::with_capacity(self.order + 1);
        for _ in 0..=self.order {
            out.push((&uk.block(0, 0, n, n) - &ak).max_abs());
            uk = uk.matmul(&self.u);
            ak = ak.matmul(&self.a);
        }
        out
    }

    /// `|<U^k embed phi, embed psi> - <A^k phi, psi>|` for `k = 0..=order`.
    pub fn moment_errors(&self, phi: &[Complex64], psi: &[Complex64]) -> Vec<f64> {
        let (ep, eq) = (self.embed(phi), self.embed(psi));
        let mut uk = ep.clone();
        let mut ak = phi.to_vec();
        let mut out = Vec::with_capacity(self.order + 1);
        for _ in 0..=self.order {
            out.push((dot(&uk, &eq) - dot(&ak, psi)).norm());
            uk = self.u.matvec(&uk);
            ak = self.a.matvec(&ak);
        }
        out
    }
}

/// Unitary `N`-dilation of the contraction `a`.
pub fn dilate(a: &ComplexMatrix, order: usize) -> Result<DilationResult> {
    let n = a.ensure_square()?;
    if order == 0 {
        return Err(Error::InvalidInput("dilation order must be at least 1".into()));
    }
    let norm = operator_norm(a);
    if norm > 1.0 + CONTRACTION_TOL {
        return Err(Error::NotAContraction { norm });
    }
    let id = ComplexMatrix::identity(n);
    let adj = a.adjoint();
    let defect_a = psd_sqrt_with_floor(&(&id - &adj.matmul(a)), DEFECT_FLOOR)?;
    let defect_a_star = psd_sqrt_with_floor(&(&id - &a.matmul(&adj)), DEFECT_FLOOR)?;
    let intertwining = (&a.matmul(&defect_a) - &defect_a_star.matmul(a)).max_abs();
    if intertwining > 1e-8 {
        return Err(Error::IntertwiningViolated { residual: intertwining });
    }

    let blocks = order + 1;
    let mut u = ComplexMatrix::zeros(blocks * n, blocks * n);
    u.set_block(0, 0, a);
    u.set_block(0, order * n, &defect_a_star);
    u.set_block(n, 0, &defect_a);
    u.set_block(n, order * n, &(-&adj));
    for r in 2..blocks {
        u.set_block(r * n, (r - 1) * n, &id);
    }
    Ok(DilationResult { u, base_dim: n, order, defect_a, defect_a_star, a: a.clone() })
}

/// Atomic measure `sum_k <P_k phi', psi'> delta_{lambda_k}` over the
/// eigenvalues `lambda_k` of a dilation, with `phi'`, `psi'` the embedded
/// vectors.
#[derive(Clone, Debug)]
pub struct SpectralMeasureExtract {
    pub measure: AtomicMeasure,
    /// Largest off-diagonal entry of the Schur form.
    pub offdiagonal: f64,
    /// Largest `| |lambda| - 1 |` before renormalization.
    pub unimodular_deviation: f64,
    /// Total modulus of weights dropped as negligible.
    pub dropped_weight: f64,
}

pub fn extract_spectral_measure(
    d: &DilationResult,
    phi: &[Complex64],
    psi: &[Complex64],
) -> Result<SpectralMeasureExtract> {
    for v in [phi, psi] {
        if v.len() != d.base_dim {
            return Err(Error::DimensionMismatch { expected: d.base_dim, got: v.len() });
        }
    }
    let schur = schur_decompose(&d.u)?;
    let offdiagonal = schur.upper_residual().max(schur.lower_residual());
    if offdiagonal > DIAGONALIZATION_TOL {
        return Err(Error::NotDiagonalizable { residual: offdiagonal });
    }
    let (ep, eq) = (d.embed(phi), d.embed(psi));
    let eigs = schur.eigenvalues();
    let unimodular_deviation = eigs.iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max);
    if unimodular_deviation > UNIMODULAR_TOL {
        return Err(Error::NotDiagonalizable { residual: unimodular_deviation });
    }
    // w_k = <q_k q_k* phi', psi'> = (q_k* phi') conj(q_k* psi')
    let weights: Vec<Complex64> = (0..eigs.len())
        .map(|k| {
            let q = schur.q.column(k);
            dot(&ep, &q) * dot(&eq, &q).conj()
        })
        .collect();

    let clusters = cluster_points(&eigs, ATOM_CLUSTER_TOL);
    let mut assigned = vec![false; eigs.len()];
    let threshold = NEGLIGIBLE_WEIGHT * norm2(phi) * norm2(psi);
    let mut atoms = Vec::with_capacity(clusters.len());
    let mut dropped_weight = 0.0;
    for c in &clusters {
        let mut weight = Complex64::new(0.0, 0.0);
        for (k, z) in eigs.iter().enumerate() {
            if !assigned[k] && (z - c.center).norm() <= c.spread + ATOM_CLUSTER_TOL {
                assigned[k] = true;
                weight += weights[k];
            }
        }
        if weight.norm() <= threshold {
            dropped_weight += weight.norm();
            continue;
        }
        atoms.push((UnitPoint::new(c.center)?, weight));
    }
    Ok(SpectralMeasureExtract {
        measure: AtomicMeasure::new(atoms, Complex64::new(0.0, 0.0)),
        offdiagonal,
        unimodular_deviation,
        dropped_weight,
    })
}

/// `h~(w) = 1 + w sum_k w_k / (1 - w lambda_k)` for atoms `(lambda_k, w_k)`.
pub fn reconstructed_h(mu: &AtomicMeasure, w: Complex64) -> Complex64 {
    ONE + w * mu.atoms().iter().map(|&(p, c)| c / (ONE - w * p.value())).sum::<Complex64>()
}

/// Taylor coefficients of [`reconstructed_h`]: `1, sum w_k lambda_k^{n-1}`.
pub fn reconstructed_taylor(mu: &AtomicMeasure, max_order: usize) -> Vec<Complex64> {
    let mut out = vec![ONE];
    for n in 1..=max_order {
        out.push(mu.atoms().iter().map(|&(p, c)| c * p.value().powu(n as u32 - 1)).sum());
    }
    out
}

/// Everything measured by a dilation round trip.
#[derive(Clone, Debug, Serialize)]
pub struct RoundTripDiagnostics {
    pub dim: usize,
    pub order: usize,
    pub unitarity_residual: f64,
    pub compression_errors: Vec<f64>,
    pub moment_errors: Vec<f64>,
    pub taylor_errors: Vec<f64>,
    /// `|sum w_k - <phi, psi>|`.
    pub mass_error: f64,
    /// Largest `|B h~(w) - K(reflect mu)(w)|` over sample points.
    pub reflection_error: f64,
    pub total_variation: f64,
    pub norm_product: f64,
    pub atoms: usize,
    pub offdiagonal: f64,
    pub dropped_weight: f64,
}

const REFLECTION_SAMPLES: [Complex64; 6] = [
    Complex64::new(0.0, 0.0),
    Complex64::new(0.5, 0.0),
    Complex64::new(-0.3, 0.6),
    Complex64::new(0.1, -0.85),
    Complex64::new(-0.7, -0.2),
    Complex64::new(0.62, 0.61),
];

/// Dilates `s.a()` to order `order`, extracts the spectral measure of the
/// embedded vectors and compares it against the original system.
pub fn roundtrip(s: &ContractionSystem, order: usize) -> Result<(RoundTripDiagnostics, SpectralMeasureExtract)> {
    let d = dilate(s.a(), order)?;
    let extract = extract_spectral_measure(&d, s.phi(), s.psi())?;
    let mu = &extract.measure;
    let h = s.taylor_coefficients(order + 1);
    let h_tilde = reconstructed_taylor(mu, order + 1);
    let taylor_errors = h.iter().zip(&h_tilde).map(|(a, b)| (a - b).norm()).collect();
    let mass_error = (mu.mass() - dot(s.phi(), s.psi())).norm();

    let reflected = mu.reflect_measure();
    let mut reflection_error = 0.0f64;
    for w in REFLECTION_SAMPLES {
        let bh = if w == Complex64::new(0.0, 0.0) { mu.mass() } else { (reconstructed_h(mu, w) - ONE) / w };
        reflection_error = reflection_error.max((bh - eval_k(&reflected, w)?).norm());
    }

    let diagnostics = RoundTripDiagnostics {
        dim: d.dim(),
        order,
        unitarity_residual: d.unitarity_residual(),
        compression_errors: d.compression_errors(),
        moment_errors: d.moment_errors(s.phi(), s.psi()),
        taylor_errors,
        mass_error,
        reflection_error,
        total_variation: mu.total_variation(),
        norm_product: s.norm_product(),
        atoms: mu.atoms().len(),
        offdiagonal: extract.offdiagonal,
        dropped_weight: extract.dropped_weight,
    };
    Ok((diagnostics, extract))
}

fn max_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(0.0, f64::max)
}

impl RoundTripDiagnostics {
    /// Links checked by [`roundtrip_check`]; all residuals are absolute.
    pub fn links(&self, tols: &Tolerances) -> Vec<Link> {
        vec![
            Link::new("TV(mu) <= ||phi|| ||psi||", self.total_variation, self.norm_product, tols.tv),
            Link::residual("||U*U - I||_F / dim", self.unitarity_residual / self.dim as f64, tols.unitarity),
            Link::residual("max_k |block00(U^k) - A^k|", max_of(&self.compression_errors), tols.moment),
            Link::residual("max_k |<U^k phi', psi'> - <A^k phi, psi>|", max_of(&self.moment_errors), tols.moment),
            Link::residual("max_n |h_n - h~_n|, n <= N + 1", max_of(&self.taylor_errors), tols.taylor),
            Link::residual("|mu(T) - <phi, psi>|", self.mass_error, tols.moment),
            Link::residual("max_w |B h~(w) - K(reflect mu)(w)|", self.reflection_error, tols.taylor),
        ]
    }
}

/// Round trip system -> dilation -> spectral measure -> function; the report
/// compares `TV(mu)` with `||phi|| ||psi||` and carries the identity
/// residuals as further links.
pub fn roundtrip_check(s: &ContractionSystem, order: usize, tols: &Tolerances) -> Result<BoundReport> {
    let (diag, _) = roundtrip(s, order)?;
    let links = diag.links(tols);
    let details = json!({
        "lhs": "total variation of the extracted spectral measure",
        "rhs": "||phi|| ||psi||",
        "diagnostics": diag,
    });
    Ok(BoundReport::chain("roundtrip", &links, details))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::sharp_measure;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn scalar_zero_dilates_to_swap() {
        let d = dilate(&ComplexMatrix::zeros(1, 1), 1).unwrap();
        let swap = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]).unwrap();
        assert_eq!(d.u, swap);
        assert!(d.compression_errors().iter().all(|&e| e == 0.0));
    }

    #[test]
    fn unitary_has_zero_defects() {
        let a = ComplexMatrix::from_diagonal(&[c(0.0, 1.0), c(-1.0, 0.0)]);
        let d = dilate(&a, 4).unwrap();
        assert_eq!(d.defect_a.max_abs(), 0.0);
        assert_eq!(d.defect_a_star.max_abs(), 0.0);
        assert!(d.unitarity_residual() < 1e-15);
        assert!(d.compression_errors().iter().all(|&e| e < 1e-15));
    }

    #[test]
    fn non_contraction_rejected() {
        let a = ComplexMatrix::from_diagonal(&[c(2.0, 0.0)]);
        assert!(matches!(dilate(&a, 1), Err(Error::NotAContraction { .. })));
    }

    #[test]
    fn swap_spectral_measure() {
        let d = dilate(&ComplexMatrix::zeros(1, 1), 1).unwrap();
        let e = extract_spectral_measure(&d, &[c(1.0, 0.0)], &[c(1.0, 0.0)]).unwrap();
        let mut atoms: Vec<_> = e.measure.atoms().iter().map(|&(p, w)| (p.value(), w)).collect();
        atoms.sort_by(|a, b| a.0.re.total_cmp(&b.0.re));
        assert_eq!(atoms.len(), 2);
        assert!((atoms[0].0 - c(-1.0, 0.0)).norm() < 1e-14 && (atoms[0].1 - c(0.5, 0.0)).norm() < 1e-14);
        assert!((atoms[1].0 - c(1.0, 0.0)).norm() < 1e-14 && (atoms[1].1 - c(0.5, 0.0)).norm() < 1e-14);

        let e = extract_spectral_measure(&d, &[c(0.0, 0.0)], &[c(1.0, 0.0)]).unwrap();
        assert!(e.measure.is_zero());
    }

    #[test]
    fn scalar_zero_taylor_diverges_after_order_two() {
        let s = ContractionSystem::new(ComplexMatrix::zeros(1, 1), vec![c(1.0, 0.0)], vec![c(1.0, 0.0)]).unwrap();
        let (diag, extract) = roundtrip(&s, 1).unwrap();
        assert!(diag.taylor_errors.iter().all(|&e| e < 1e-14));
        let tilde = reconstructed_taylor(&extract.measure, 4);
        let expected = [1.0, 1.0, 0.0, 1.0, 0.0];
        for (t, e) in tilde.iter().zip(expected) {
            assert!((t - c(e, 0.0)).norm() < 1e-14);
        }
        assert!(roundtrip_check(&s, 1, &Tolerances::default()).unwrap().pass);
    }

    #[test]
    fn measure_system_round_trips_to_reflected_measure() {
        let sigma = AtomicMeasure::new(
            [(UnitPoint::from_angle(0.4), c(0.7, -0.2)), (UnitPoint::from_angle(2.5), c(-0.3, 0.9))],
            c(0.0, 0.0),
        );
        let s = ContractionSystem::from_measure(&sigma).unwrap();
        let (diag, extract) = roundtrip(&s, 5).unwrap();
        assert!(diag.taylor_errors.iter().all(|&e| e < 1e-12));
        let expected = sigma.reflect_measure();
        assert_eq!(extract.measure.atoms().len(), 2);
        for &(p, w) in expected.atoms() {
            let hit = extract.measure.atoms().iter().find(|(q, _)| (q.value() - p.value()).norm() < 1e-10).unwrap();
            assert!((hit.1 - w).norm() < 1e-12);
        }
        // exact agreement of h~ and h at all orders
        let h = s.taylor_coefficients(20);
        let t = reconstructed_taylor(&extract.measure, 20);
        assert!(h.iter().zip(&t).all(|(a, b)| (a - b).norm() < 1e-12));
        assert!(roundtrip_check(&s, 5, &Tolerances::default()).unwrap().pass);
        assert!(
            roundtrip_check(&ContractionSystem::from_measure(&sharp_measure()).unwrap(), 3, &Tolerances::default())
                .unwrap()
                .pass
        );
    }
}
