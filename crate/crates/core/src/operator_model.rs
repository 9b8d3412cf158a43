//! Hilbert-space model `h(w) = 1 + w <(I - wA)^{-1} phi, psi>` and the
//! rank-one perturbation `L = A - phi psi*`.
//!
//! For an atomic measure `sigma = sum c_j delta_{zeta_j}` the model lives on
//! `L^2(T, d|sigma|)`, which is `C^n` with weights `|c_j|`. Absorbing
//! `sqrt|c_j|` into the vectors turns that weighted inner product into the
//! standard one, so `A = diag(conj zeta_j)`, `phi_j = sqrt|c_j|` and
//! `psi_j = conj(nu_j) sqrt|c_j|` with `nu_j = c_j / |c_j|`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::json::{rows_to_complex, rows_to_json, vec_from_json, vec_to_json, SystemJson};
use crate::linalg::{
    cluster_points, dot, norm2, operator_norm, schur_decompose, trace_norm, ComplexMatrix, EigenCluster, Lu,
    DEFAULT_CLUSTER_TOL,
};
use crate::measure::AtomicMeasure;
use crate::transform::Holomorphic;

/// Slack allowed on `||A|| <= 1`.
pub const CONTRACTION_TOL: f64 = 1e-10;
/// Width of the band around the unit circle whose eigenvalues are reported
/// as boundary-indeterminate.
pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-8;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A contraction `A` together with vectors `phi`, `psi`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContractionSystem {
    a: ComplexMatrix,
    phi: Vec<Complex64>,
    psi: Vec<Complex64>,
}

impl ContractionSystem {
    pub fn new(a: ComplexMatrix, phi: Vec<Complex64>, psi: Vec<Complex64>) -> Result<Self> {
        let n = a.ensure_square()?;
        for v in [&phi, &psi] {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: v.len() });
            }
        }
        if !a.is_finite() || !phi.iter().chain(&psi).all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::InvalidInput("system has non-finite entries".into()));
        }
        let norm = operator_norm(&a);
        if norm > 1.0 + CONTRACTION_TOL {
            return Err(Error::NotAContraction { norm });
        }
        Ok(Self { a, phi, psi })
    }

    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn phi(&self) -> &[Complex64] {
        &self.phi
    }

    pub fn psi(&self) -> &[Complex64] {
        &self.psi
    }

    pub fn dim(&self) -> usize {
        self.phi.len()
    }

    /// `||phi|| ||psi||`, the right-hand side of the Blaschke bound.
    pub fn norm_product(&self) -> f64 {
        norm2(&self.phi) * norm2(&self.psi)
    }

    /// Builds the diagonal unitary model of a purely atomic measure, so that
    /// `<(I - wA)^{-1} phi, psi> = (K sigma)(w)`.
    pub fn from_measure(sigma: &AtomicMeasure) -> Result<Self> {
        let polar = sigma.polar_decompose()?;
        if sigma.atoms().is_empty() {
            return Err(Error::EmptyMeasure);
        }
        let diag: Vec<Complex64> = sigma.atoms().iter().map(|(p, _)| p.value().conj()).collect();
        let phi: Vec<Complex64> = polar.modulus_weights.iter().map(|&m| Complex64::new(m.sqrt(), 0.0)).collect();
        let psi: Vec<Complex64> =
            polar.modulus_weights.iter().zip(&polar.phases).map(|(&m, nu)| nu.conj() * m.sqrt()).collect();
        Ok(Self { a: ComplexMatrix::from_diagonal(&diag), phi, psi })
    }

    /// `1 + w psi* x` with `(I - wA) x = phi`, for `|w| < 1`.
    pub fn eval_h_resolvent(&self, w: Complex64) -> Result<Complex64> {
        let r = w.norm();
        if r >= 1.0 {
            return Err(Error::OutsideDisk { modulus: r });
        }
        let x = self.resolvent_solve(w)?;
        Ok(ONE + w * dot(&x, &self.psi))
    }

    fn resolvent_matrix(&self, w: Complex64) -> ComplexMatrix {
        let n = self.dim();
        ComplexMatrix::from_fn(n, n, |i, j| if i == j { ONE - w * self.a[(i, j)] } else { -w * self.a[(i, j)] })
    }

    fn resolvent_solve(&self, w: Complex64) -> Result<Vec<Complex64>> {
        let lu = Lu::factor(&self.resolvent_matrix(w))?;
        if lu.pivot_ratio() < 1e-14 {
            return Err(Error::SingularResolvent);
        }
        lu.solve(&self.phi)
    }

    /// `L = A - phi psi*`.
    pub fn build_l(&self) -> PerturbedOperator {
        let m = ComplexMatrix::outer(&self.phi, &self.psi);
        PerturbedOperator { l: &self.a - &m }
    }

    /// `det(I - M (lambda - A)^{-1})` for `|lambda| > 1`, computed through the
    /// rank-one identity and through a full LU determinant.
    pub fn perturbation_determinant(&self, lambda: Complex64) -> Result<PerturbationDeterminant> {
        let r = lambda.norm();
        if r <= 1.0 {
            return Err(Error::OutsideDomain { modulus: r });
        }
        let n = self.dim();
        let shifted =
            ComplexMatrix::from_fn(n, n, |i, j| if i == j { lambda - self.a[(i, j)] } else { -self.a[(i, j)] });
        let lu = Lu::factor(&shifted)?;
        let x = lu.solve(&self.phi)?;
        let rank_one = ONE + dot(&x, &self.psi);

        // I - M R = I + phi (psi* R), R = (lambda - A)^{-1}; psi* R is the
        // adjoint of R* psi, which solves (lambda - A)* y = psi.
        let adj = Lu::factor(&shifted.adjoint())?;
        let y = adj.solve(&self.psi)?;
        let full_matrix = ComplexMatrix::from_fn(n, n, |i, j| {
            let id = if i == j { ONE } else { Complex64::new(0.0, 0.0) };
            id + self.phi[i] * y[j].conj()
        });
        let full = Lu::factor(&full_matrix)?.det();
        Ok(PerturbationDeterminant { rank_one, full })
    }

    pub fn from_json(s: &SystemJson) -> Result<Self> {
        let a = ComplexMatrix::from_rows(&rows_to_complex(&s.a))?;
        Self::new(a, vec_from_json(&s.phi), vec_from_json(&s.psi))
    }

    pub fn to_json(&self) -> SystemJson {
        SystemJson { a: rows_to_json(&self.a.to_rows()), phi: vec_to_json(&self.phi), psi: vec_to_json(&self.psi) }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let parsed: SystemJson = serde_json::from_str(s).map_err(|e| Error::InvalidInput(e.to_string()))?;
        Self::from_json(&parsed)
    }

    /// Taylor coefficients of `h` at 0 through order `max_order`:
    /// `1, <phi, psi>, <A phi, psi>, ...`.
    pub fn taylor_coefficients(&self, max_order: usize) -> Vec<Complex64> {
        let mut out = vec![ONE];
        let mut v = self.phi.clone();
        for _ in 1..=max_order {
            out.push(dot(&v, &self.psi));
            v = self.a.matvec(&v);
        }
        out
    }
}

impl Holomorphic for ContractionSystem {
    fn value(&self, w: Complex64) -> Complex64 {
        match self.resolvent_solve(w) {
            Ok(x) => ONE + w * dot(&x, &self.psi),
            Err(_) => Complex64::new(f64::NAN, f64::NAN),
        }
    }

    /// `h'(w) = <R phi, psi> + w <R A R phi, psi>` with `R = (I - wA)^{-1}`.
    fn derivative(&self, w: Complex64) -> Complex64 {
        let Ok(x) = self.resolvent_solve(w) else {
            return Complex64::new(f64::NAN, f64::NAN);
        };
        let ax = self.a.matvec(&x);
        let Ok(rax) = Lu::factor(&self.resolvent_matrix(w)).and_then(|lu| lu.solve(&ax)) else {
            return Complex64::new(f64::NAN, f64::NAN);
        };
        dot(&x, &self.psi) + w * dot(&rax, &self.psi)
    }
}

/// Both evaluations of the perturbation determinant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerturbationDeterminant {
    /// `1 + psi* (lambda - A)^{-1} phi`.
    pub rank_one: Complex64,
    /// `det(I - M (lambda - A)^{-1})` by LU.
    pub full: Complex64,
}

impl PerturbationDeterminant {
    pub fn relative_discrepancy(&self) -> f64 {
        (self.rank_one - self.full).norm() / self.rank_one.norm().max(self.full.norm()).max(1.0)
    }
}

/// `L = A + M` with `M f = -<f, psi> phi`.
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbedOperator {
    pub l: ComplexMatrix,
}

/// Spectrum of `L` split by position relative to the unit circle.
#[derive(Clone, Debug, PartialEq)]
pub struct OutsideSpectrum {
    /// Clusters with `|center| > 1 + tol`.
    pub outside: Vec<EigenCluster>,
    /// Clusters with `| |center| - 1 | <= tol`; excluded from Blaschke sums.
    pub boundary: Vec<EigenCluster>,
    /// Clusters whose spread exceeds ten times the boundary tolerance
    /// (strongly defective eigenvalues); informational.
    pub defective: Vec<EigenCluster>,
}

impl PerturbedOperator {
    /// `trace_norm(L - A)`, which must equal `||phi|| ||psi||`.
    pub fn perturbation_trace_norm(&self, system: &ContractionSystem) -> f64 {
        trace_norm(&(&self.l - system.a()))
    }

    pub fn eigenvalues_outside_disk(&self, tol: f64) -> Result<OutsideSpectrum> {
        if !(tol > 0.0) {
            return Err(Error::InvalidInput(format!("boundary tolerance must be positive, got {tol}")));
        }
        let eigs = schur_decompose(&self.l)?.eigenvalues();
        let radius = DEFAULT_CLUSTER_TOL * operator_norm(&self.l).max(1.0);
        let clusters = cluster_points(&eigs, radius);
        let mut spec = OutsideSpectrum { outside: vec![], boundary: vec![], defective: vec![] };
        for c in clusters {
            if c.spread > 10.0 * tol {
                spec.defective.push(c.clone());
            }
            let r = c.center.norm();
            if r > 1.0 + tol {
                spec.outside.push(c);
            } else if r >= 1.0 - tol {
                spec.boundary.push(c);
            }
        }
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::UnitPoint;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn dirac_minus_one(weight: f64) -> AtomicMeasure {
        AtomicMeasure::dirac(UnitPoint::new(c(-1.0, 0.0)).unwrap(), c(weight, 0.0))
    }

    #[test]
    fn sharp_example_model() {
        let s = ContractionSystem::from_measure(&dirac_minus_one(1.0)).unwrap();
        assert_eq!(s.a()[(0, 0)], c(-1.0, 0.0));
        assert_eq!(s.phi(), &[c(1.0, 0.0)]);
        assert_eq!(s.psi(), &[c(1.0, 0.0)]);
        let l = s.build_l();
        assert_eq!(l.l[(0, 0)], c(-2.0, 0.0));
        assert!(s.eval_h_resolvent(c(-0.5, 0.0)).unwrap().norm() < 1e-15);
        assert_eq!(s.eval_h_resolvent(c(0.0, 0.0)).unwrap(), ONE);
        let spec = l.eigenvalues_outside_disk(DEFAULT_BOUNDARY_TOL).unwrap();
        assert_eq!(spec.outside.len(), 1);
        assert!((spec.outside[0].center - c(-2.0, 0.0)).norm() < 1e-14);
        let pd = s.perturbation_determinant(c(-2.0, 0.0)).unwrap();
        assert!(pd.rank_one.norm() < 1e-15 && pd.full.norm() < 1e-15);
    }

    #[test]
    fn weight_two_model() {
        let s = ContractionSystem::from_measure(&dirac_minus_one(2.0)).unwrap();
        assert!((s.phi()[0] - c(2f64.sqrt(), 0.0)).norm() < 1e-15);
        assert!((s.psi()[0] - c(2f64.sqrt(), 0.0)).norm() < 1e-15);
        assert!((s.build_l().l[(0, 0)] - c(-3.0, 0.0)).norm() < 1e-15);
        assert!(s.eval_h_resolvent(c(-1.0 / 3.0, 0.0)).unwrap().norm() < 1e-15);
    }

    #[test]
    fn two_atom_model() {
        let sigma = AtomicMeasure::new(
            [(UnitPoint::from_angle(0.0), c(0.5, 0.0)), (UnitPoint::new(c(-1.0, 0.0)).unwrap(), c(0.5, 0.0))],
            c(0.0, 0.0),
        );
        let s = ContractionSystem::from_measure(&sigma).unwrap();
        assert_eq!(s.a().diagonal(), vec![c(1.0, 0.0), c(-1.0, 0.0)]);
        let r = 0.5f64.sqrt();
        for v in [s.phi(), s.psi()] {
            assert!(v.iter().all(|z| (z - c(r, 0.0)).norm() < 1e-15));
        }
        assert!(s.a().unitarity_residual() <= 1e-14);
    }

    #[test]
    fn model_errors() {
        assert!(matches!(ContractionSystem::from_measure(&AtomicMeasure::zero()), Err(Error::EmptyMeasure)));
        assert!(matches!(
            ContractionSystem::from_measure(&AtomicMeasure::lebesgue_only(ONE)),
            Err(Error::NonAtomicMeasure)
        ));
        let big = ComplexMatrix::from_diagonal(&[c(1.5, 0.0)]);
        assert!(matches!(ContractionSystem::new(big, vec![ONE], vec![ONE]), Err(Error::NotAContraction { .. })));
        let s = ContractionSystem::from_measure(&dirac_minus_one(1.0)).unwrap();
        assert!(matches!(s.eval_h_resolvent(c(1.0, 0.0)), Err(Error::OutsideDisk { .. })));
        assert!(matches!(s.perturbation_determinant(c(0.5, 0.0)), Err(Error::OutsideDomain { .. })));
    }

    #[test]
    fn zero_phi_leaves_a_unchanged() {
        let a = ComplexMatrix::from_diagonal(&[c(0.0, 1.0), c(-1.0, 0.0)]);
        let s = ContractionSystem::new(a.clone(), vec![c(0.0, 0.0); 2], vec![ONE, ONE]).unwrap();
        let l = s.build_l();
        assert_eq!(l.l, a);
        let spec = l.eigenvalues_outside_disk(DEFAULT_BOUNDARY_TOL).unwrap();
        assert!(spec.outside.is_empty());
        assert_eq!(spec.boundary.len(), 2);
    }

    #[test]
    fn determinant_tends_to_one() {
        let s = ContractionSystem::from_measure(&dirac_minus_one(1.0)).unwrap();
        let pd = s.perturbation_determinant(c(1e6, 0.0)).unwrap();
        assert!((pd.rank_one - ONE).norm() <= 1e-5 * s.norm_product());
        assert!((pd.full - ONE).norm() <= 1e-5 * s.norm_product());
    }
}
