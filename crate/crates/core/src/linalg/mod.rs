//! Dense complex linear algebra used throughout the crate.

mod hermitian;
mod lu;
mod matrix;
mod numrange;
mod poly;
mod schur;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use hermitian::{hermitian_eigen, hermitian_max_eigenvalue, HermitianEigen};
pub use lu::{determinant, solve, Lu};
pub use matrix::{dot, norm2, ComplexMatrix};
pub use numrange::{dist_to_numerical_range, NumericalRange, DEFAULT_ANGLES};
pub use poly::{poly_eval, poly_roots, trim_polynomial};
pub use schur::{schur_decompose, SchurForm};

/// Default cluster radius factor, scaled by `max(1, ||A||)`.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-6;

/// A group of numerically coincident eigenvalues.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenCluster {
    pub center: Complex64,
    pub multiplicity: usize,
    /// Largest distance of a member from the center.
    pub spread: f64,
}

/// Single-linkage clustering: points closer than `radius` end up together.
/// Clusters are returned sorted by `(re, im)` of their centers.
pub fn cluster_points(points: &[Complex64], radius: f64) -> Vec<EigenCluster> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (points[i] - points[j]).norm() <= radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[b] = a;
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Complex64>)> = Vec::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        match groups.iter_mut().find(|(r, _)| *r == root) {
            Some((_, members)) => members.push(points[i]),
            None => groups.push((root, vec![points[i]])),
        }
    }
    let mut clusters: Vec<EigenCluster> = groups
        .into_iter()
        .map(|(_, members)| {
            let center = members.iter().sum::<Complex64>() / members.len() as f64;
            let spread = members.iter().map(|z| (z - center).norm()).fold(0.0, f64::max);
            EigenCluster { center, multiplicity: members.len(), spread }
        })
        .collect();
    clusters.sort_by(|a, b| a.center.re.total_cmp(&b.center.re).then(a.center.im.total_cmp(&b.center.im)));
    clusters
}

/// Eigenvalues of `a` grouped with radius `tol * max(1, ||a||)`.
pub fn eigenvalues_clustered(a: &ComplexMatrix, tol: f64) -> Result<Vec<EigenCluster>> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("cluster tolerance must be positive, got {tol}")));
    }
    let schur = schur_decompose(a)?;
    let radius = tol * operator_norm(a).max(1.0);
    Ok(cluster_points(&schur.eigenvalues(), radius))
}

/// Singular values in nonincreasing order.
///
/// Computed as the nonnegative half of the spectrum of the Hermitian
/// augmentation `[[0, A], [A*, 0]]`, which keeps small singular values
/// accurate to `eps ||A||` in absolute terms.
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    let (m, n) = (a.nrows(), a.ncols());
    let k = m.min(n);
    if k == 0 {
        return vec![];
    }
    let mut aug = ComplexMatrix::zeros(m + n, m + n);
    aug.set_block(0, m, a);
    aug.set_block(m, 0, &a.adjoint());
    let eig = hermitian_eigen(&aug, false).expect("Hermitian QL on a finite matrix");
    eig.values.iter().rev().take(k).map(|&s| s.max(0.0)).collect()
}

pub fn trace_norm(a: &ComplexMatrix) -> f64 {
    singular_values(a).iter().sum()
}

pub fn operator_norm(a: &ComplexMatrix) -> f64 {
    singular_values(a).first().copied().unwrap_or(0.0)
}

/// Largest eigenvalue modulus.
pub fn spectral_radius(a: &ComplexMatrix) -> Result<f64> {
    Ok(schur_decompose(a)?.eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Hermitian square root of a positive semidefinite matrix.
///
/// Requires `||H - H*|| <= 1e-10 ||H||` and eigenvalues above
/// `-1e-10 ||H||`; slightly negative eigenvalues are clamped to zero.
pub fn psd_sqrt(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    psd_sqrt_with_floor(h, 0.0)
}

/// As [`psd_sqrt`], additionally treating eigenvalues at or below `floor`
/// (absolute) as exact zeros.
pub fn psd_sqrt_with_floor(h: &ComplexMatrix, floor: f64) -> Result<ComplexMatrix> {
    let n = h.ensure_square()?;
    let asym = h.hermitian_defect();
    if asym > 1e-10 {
        return Err(Error::NotHermitian { asymmetry: asym });
    }
    let sym = ComplexMatrix::from_fn(n, n, |i, j| (h[(i, j)] + h[(j, i)].conj()) * 0.5);
    let eig = hermitian_eigen(&sym, true)?;
    let scale = operator_norm(&sym);
    if let Some(&min) = eig.values.first() {
        if min < -1e-10 * scale {
            return Err(Error::NotPsd { min_eigenvalue: min });
        }
    }
    let v = eig.vectors.expect("vectors requested");
    let roots: Vec<f64> = eig.values.iter().map(|&x| if x <= floor { 0.0 } else { x.sqrt() }).collect();
    let s = ComplexMatrix::from_fn(n, n, |i, j| (0..n).map(|k| v[(i, k)] * roots[k] * v[(j, k)].conj()).sum());
    // exact Hermitian symmetry
    Ok(ComplexMatrix::from_fn(n, n, |i, j| (s[(i, j)] + s[(j, i)].conj()) * 0.5))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn singular_values_of_diagonal() {
        let a = ComplexMatrix::from_diagonal(&[c(3.0, 0.0), c(0.0, -4.0)]);
        let s = singular_values(&a);
        assert!((s[0] - 4.0).abs() < 1e-14 && (s[1] - 3.0).abs() < 1e-14);
        assert!((trace_norm(&a) - 7.0).abs() < 1e-13);
        assert_eq!(trace_norm(&ComplexMatrix::zeros(3, 3)), 0.0);
    }

    #[test]
    fn operator_norm_of_diagonal() {
        let a = ComplexMatrix::from_diagonal(&[c(0.5, 0.0), c(-0.8, 0.0)]);
        assert!((operator_norm(&a) - 0.8).abs() < 1e-15);
    }

    #[test]
    fn rank_one_trace_norm_is_product_of_norms() {
        let phi = [c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 3.0)];
        let psi = [c(0.2, 0.1), c(1.0, -1.0), c(2.0, 0.0)];
        let m = ComplexMatrix::outer(&phi, &psi);
        let expected = norm2(&phi) * norm2(&psi);
        let s = singular_values(&m);
        assert!((s[0] - expected).abs() <= 1e-12 * expected);
        assert!((trace_norm(&m) - expected).abs() <= 1e-12 * expected);
    }

    #[test]
    fn psd_sqrt_examples() {
        let s = psd_sqrt(&ComplexMatrix::identity(3)).unwrap();
        assert!((&s - &ComplexMatrix::identity(3)).frobenius_norm() < 1e-14);
        let s = psd_sqrt(&ComplexMatrix::from_diagonal(&[c(4.0, 0.0), c(9.0, 0.0)])).unwrap();
        assert!((s[(0, 0)] - c(2.0, 0.0)).norm() < 1e-14 && (s[(1, 1)] - c(3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn psd_sqrt_errors() {
        let not_herm =
            ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]]).unwrap();
        assert!(matches!(psd_sqrt(&not_herm), Err(Error::NotHermitian { .. })));
        let indefinite = ComplexMatrix::from_diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        assert!(matches!(psd_sqrt(&indefinite), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn clustering_examples() {
        let a = ComplexMatrix::from_diagonal(&[c(2.0, 0.0), c(2.0 + 1e-9, 0.0), c(5.0, 0.0)]);
        let cl = eigenvalues_clustered(&a, 1e-6).unwrap();
        assert_eq!(cl.len(), 2);
        assert_eq!(cl[0].multiplicity, 2);
        assert!((cl[0].center - c(2.0, 0.0)).norm() < 1e-8);
        assert_eq!(cl[1].multiplicity, 1);

        let nil = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]]).unwrap();
        let cl = eigenvalues_clustered(&nil, 1e-6).unwrap();
        assert_eq!(cl, vec![EigenCluster { center: c(0.0, 0.0), multiplicity: 2, spread: 0.0 }]);

        let jordan = ComplexMatrix::from_fn(3, 3, |i, j| {
            if i == j {
                c(3.0, 0.0)
            } else if j == i + 1 {
                c(1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let cl = eigenvalues_clustered(&jordan, 1e-6).unwrap();
        assert_eq!(cl.len(), 1);
        assert_eq!(cl[0].multiplicity, 3);
        assert!(cl[0].spread <= 1e-6 * operator_norm(&jordan));
    }

    #[test]
    fn nonpositive_tolerance_rejected() {
        assert!(eigenvalues_clustered(&ComplexMatrix::identity(2), 0.0).is_err());
    }
}
