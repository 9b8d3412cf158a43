use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Clone, Debug)]
pub struct Lu {
    lu: ComplexMatrix,
    perm: Vec<usize>,
    swaps: usize,
}

impl Lu {
    pub fn factor(a: &ComplexMatrix) -> Result<Self> {
        let n = a.ensure_square()?;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        for k in 0..n {
            let (p, pivot) =
                (k..n)
                    .map(|i| (i, lu[(i, k)].norm()))
                    .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot == 0.0 {
                // singular column; leave the zero pivot, det() reports 0 and solve() errors
                continue;
            }
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
                perm.swap(k, p);
                swaps += 1;
            }
            let inv = lu[(k, k)].inv();
            for i in k + 1..n {
                let factor = lu[(i, k)] * inv;
                lu[(i, k)] = factor;
                if factor != Complex64::new(0.0, 0.0) {
                    for j in k + 1..n {
                        let u = lu[(k, j)];
                        lu[(i, j)] -= factor * u;
                    }
                }
            }
        }
        Ok(Self { lu, perm, swaps })
    }

    pub fn det(&self) -> Complex64 {
        let n = self.lu.nrows();
        let mut d: Complex64 = (0..n).map(|i| self.lu[(i, i)]).product();
        if self.swaps % 2 == 1 {
            d = -d;
        }
        d
    }

    /// Smallest pivot modulus relative to the largest; 0 means singular.
    pub fn pivot_ratio(&self) -> f64 {
        let n = self.lu.nrows();
        if n == 0 {
            return 1.0;
        }
        let pivots: Vec<f64> = (0..n).map(|i| self.lu[(i, i)].norm()).collect();
        let max = pivots.iter().cloned().fold(0.0, f64::max);
        let min = pivots.iter().cloned().fold(f64::INFINITY, f64::min);
        if max == 0.0 {
            0.0
        } else {
            min / max
        }
    }

    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.lu.nrows();
        if b.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: b.len() });
        }
        if self.pivot_ratio() == 0.0 {
            return Err(Error::SingularResolvent);
        }
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.lu[(i, j)];
                x[i] = x[i] - l * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.lu[(i, j)];
                x[i] = x[i] - u * x[j];
            }
            x[i] /= self.lu[(i, i)];
        }
        Ok(x)
    }
}

pub fn solve(a: &ComplexMatrix, b: &[Complex64]) -> Result<Vec<Complex64>> {
    Lu::factor(a)?.solve(b)
}

pub fn determinant(a: &ComplexMatrix) -> Result<Complex64> {
    Ok(Lu::factor(a)?.det())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn solves_permuted_system() {
        let a = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(2.0, 1.0)], vec![c(1.0, 0.0), c(3.0, 0.0)]]).unwrap();
        let b = [c(1.0, 0.0), c(0.0, 1.0)];
        let x = solve(&a, &b).unwrap();
        let r = a.matvec(&x);
        for (ri, bi) in r.iter().zip(&b) {
            assert!((ri - bi).norm() < 1e-14);
        }
        // det = 0*3 - (2+i)*1
        assert!((determinant(&a).unwrap() - c(-2.0, -1.0)).norm() < 1e-14);
    }

    #[test]
    fn singular_matrix_has_zero_det_and_fails_solve() {
        let a = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(2.0, 0.0)], vec![c(2.0, 0.0), c(4.0, 0.0)]]).unwrap();
        assert_eq!(determinant(&a).unwrap().norm(), 0.0);
        assert!(solve(&a, &[c(1.0, 0.0), c(0.0, 0.0)]).is_err());
    }
}
