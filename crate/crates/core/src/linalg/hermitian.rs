//! Hermitian eigensolver: Householder tridiagonalization, a diagonal phase
//! change to a real symmetric tridiagonal, then implicit QL with Wilkinson
//! shifts.

use num_complex::Complex64;

use super::schur::hessenberg;
use super::ComplexMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, ordered like `values`.
    pub vectors: Option<ComplexMatrix>,
}

/// Eigen-decomposition of a Hermitian matrix. Only the lower triangle and the
/// real part of the diagonal are read after the reduction.
pub fn hermitian_eigen(h: &ComplexMatrix, want_vectors: bool) -> Result<HermitianEigen> {
    let n = h.ensure_square()?;
    if n == 0 {
        return Ok(HermitianEigen { values: vec![], vectors: want_vectors.then(|| ComplexMatrix::zeros(0, 0)) });
    }
    let mut t = h.clone();
    let q = hessenberg(&mut t);

    let mut d: Vec<f64> = (0..n).map(|i| t[(i, i)].re).collect();
    let mut e = vec![0.0; n];
    let mut phases = vec![Complex64::new(1.0, 0.0); n];
    for i in 0..n - 1 {
        let sub = t[(i + 1, i)];
        let r = sub.norm();
        e[i] = r;
        phases[i + 1] = if r == 0.0 { phases[i] } else { phases[i] * (sub / r) };
    }

    let mut z = want_vectors.then(|| vec![vec![0.0; n]; n]);
    if let Some(z) = z.as_mut() {
        for (i, row) in z.iter_mut().enumerate() {
            row[i] = 1.0;
        }
    }
    tridiagonal_ql(&mut d, &mut e, z.as_mut())?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values: Vec<f64> = order.iter().map(|&k| d[k]).collect();

    let vectors = z.map(|z| {
        // V = Q D Z, D = diag(phases)
        ComplexMatrix::from_fn(n, n, |i, col| {
            let k = order[col];
            (0..n).map(|m| q[(i, m)] * phases[m] * z[m][k]).sum()
        })
    });
    Ok(HermitianEigen { values, vectors })
}

/// Implicit QL on a real symmetric tridiagonal with diagonal `d` and
/// off-diagonal `e` (`e[i]` couples `i` and `i+1`; `e[n-1]` is ignored).
/// Rotations are accumulated into `z` (row-major, columns are vectors).
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64], mut z: Option<&mut Vec<Vec<f64>>>) -> Result<()> {
    let n = d.len();
    if n < 2 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    let max_iter = 60;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > max_iter {
                return Err(Error::NoConvergence { sweeps: max_iter });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0f64, 1.0f64, 0.0f64);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for row in z.iter_mut() {
                        let f = row[i + 1];
                        row[i + 1] = s * row[i] + c * f;
                        row[i] = c * row[i] - s * f;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Largest eigenvalue of a Hermitian matrix.
pub fn hermitian_max_eigenvalue(h: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigen(h, false)?.values.last().copied().unwrap_or(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_matrix() {
        let h = ComplexMatrix::from_diagonal(&[c(3.0, 0.0), c(-1.0, 0.0), c(2.0, 0.0)]);
        let eig = hermitian_eigen(&h, true).unwrap();
        assert_eq!(eig.values, vec![-1.0, 2.0, 3.0]);
    }

    #[test]
    fn complex_hermitian_reconstructs() {
        let h = ComplexMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(1.0, -1.0), c(0.0, 0.5), c(0.3, 0.0)],
            vec![c(1.0, 1.0), c(-1.0, 0.0), c(2.0, 0.0), c(0.0, -0.2)],
            vec![c(0.0, -0.5), c(2.0, 0.0), c(0.5, 0.0), c(1.0, 1.0)],
            vec![c(0.3, 0.0), c(0.0, 0.2), c(1.0, -1.0), c(4.0, 0.0)],
        ])
        .unwrap();
        let eig = hermitian_eigen(&h, true).unwrap();
        let v = eig.vectors.unwrap();
        assert!(v.unitarity_residual() < 1e-13);
        let lam = ComplexMatrix::from_diagonal(&eig.values.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>());
        let recon = v.matmul(&lam).matmul(&v.adjoint());
        assert!((&recon - &h).frobenius_norm() < 1e-13);
        // trace is preserved
        let tr: f64 = eig.values.iter().sum();
        assert!((tr - 5.5).abs() < 1e-13);
    }

    #[test]
    fn repeated_eigenvalues() {
        let h = ComplexMatrix::from_fn(5, 5, |_, _| c(1.0, 0.0)); // rank one: 5, 0, 0, 0, 0
        let eig = hermitian_eigen(&h, true).unwrap();
        assert!((eig.values[4] - 5.0).abs() < 1e-13);
        for &x in &eig.values[..4] {
            assert!(x.abs() < 1e-13);
        }
        assert!(eig.vectors.unwrap().unitarity_residual() < 1e-13);
    }
}
