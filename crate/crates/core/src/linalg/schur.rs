//! Complex Schur decomposition: Householder reduction to Hessenberg form
//! followed by implicitly shifted single-shift QR with Wilkinson shifts.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `input = Q T Q*` with `Q` unitary and `T` upper triangular.
#[derive(Clone, Debug)]
pub struct SchurForm {
    pub q: ComplexMatrix,
    pub t: ComplexMatrix,
}

impl SchurForm {
    /// Diagonal of `T`: the eigenvalues, repeated by algebraic multiplicity.
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.t.diagonal()
    }

    /// Largest modulus below the diagonal of `T`.
    pub fn lower_residual(&self) -> f64 {
        let n = self.t.nrows();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..i {
                worst = worst.max(self.t[(i, j)].norm());
            }
        }
        worst
    }

    /// Largest modulus strictly above the diagonal of `T`. For a normal input
    /// this should vanish.
    pub fn upper_residual(&self) -> f64 {
        let n = self.t.nrows();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                worst = worst.max(self.t[(i, j)].norm());
            }
        }
        worst
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.q.matmul(&self.t).matmul(&self.q.adjoint())
    }
}

/// Householder reflector `I - tau v v*` sending `x` to a multiple of `e1`.
/// Returns `None` when `x` already has that shape.
pub(crate) fn householder(x: &[Complex64]) -> Option<(Vec<Complex64>, f64, Complex64)> {
    let tail: f64 = x[1..].iter().map(|z| z.norm_sqr()).sum();
    if tail == 0.0 {
        return None;
    }
    let xnorm = (x[0].norm_sqr() + tail).sqrt();
    let phase = if x[0] == ZERO { Complex64::new(1.0, 0.0) } else { x[0] / x[0].norm() };
    let alpha = -phase * xnorm;
    let mut v = x.to_vec();
    v[0] -= alpha;
    let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    Some((v, 2.0 / vnorm2, alpha))
}

/// Reduces `a` to upper Hessenberg form in place, returning the accumulated
/// unitary `Q` with `a_in = Q H Q*`.
pub(crate) fn hessenberg(h: &mut ComplexMatrix) -> ComplexMatrix {
    let n = h.nrows();
    let mut q = ComplexMatrix::identity(n);
    if n < 3 {
        return q;
    }
    for k in 0..n - 2 {
        let x: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let Some((v, tau, alpha)) = householder(&x) else {
            continue;
        };
        // H <- P H on rows k+1..n
        for j in 0..n {
            let s: Complex64 = v.iter().enumerate().map(|(i, vi)| vi.conj() * h[(k + 1 + i, j)]).sum();
            if s != ZERO {
                for (i, vi) in v.iter().enumerate() {
                    h[(k + 1 + i, j)] -= vi * (s * tau);
                }
            }
        }
        // H <- H P and Q <- Q P on columns k+1..n
        for m in [&mut *h, &mut q] {
            for i in 0..n {
                let s: Complex64 = v.iter().enumerate().map(|(j, vj)| m[(i, k + 1 + j)] * vj).sum();
                if s != ZERO {
                    for (j, vj) in v.iter().enumerate() {
                        m[(i, k + 1 + j)] -= s * tau * vj.conj();
                    }
                }
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
    q
}

/// Givens pair `(c, s)` with `[c s; -conj(s) c] [x; y] = [r; 0]`.
#[inline]
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    if y == ZERO {
        return (1.0, ZERO);
    }
    if x == ZERO {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    let ax = x.norm();
    let norm = ax.hypot(y.norm());
    (ax / norm, (x / ax) * y.conj() / norm)
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half_diff = (a - d) * 0.5;
    let disc = (half_diff * half_diff + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let r1 = mid + disc;
    let r2 = mid - disc;
    if (r1 - d).norm() <= (r2 - d).norm() {
        r1
    } else {
        r2
    }
}

/// Complex Schur decomposition `A = Q T Q*`.
///
/// Fails with [`Error::NoConvergence`] once the QR iteration exceeds
/// `100 n` sweeps.
pub fn schur_decompose(a: &ComplexMatrix) -> Result<SchurForm> {
    let n = a.ensure_square()?;
    if !a.is_finite() {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    let mut h = a.clone();
    let mut q = hessenberg(&mut h);
    if n < 2 {
        return Ok(SchurForm { q, t: h });
    }
    let norm = a.frobenius_norm();
    let abs_floor = 1e-14 * norm;
    let max_sweeps = 100 * n;
    let mut sweeps = 0usize;
    let mut since_deflation = 0usize;
    let mut hi = n - 1;

    while hi > 0 {
        // locate the start of the unreduced block ending at hi
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let local = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            if sub <= f64::EPSILON * local || sub <= abs_floor {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }

        sweeps += 1;
        since_deflation += 1;
        if sweeps > max_sweeps {
            return Err(Error::NoConvergence { sweeps: max_sweeps });
        }

        let shift = if since_deflation % 11 == 10 {
            // exceptional shift breaks rare cycling
            h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].norm(), 0.4 * h[(hi, hi - 1)].norm())
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        // chase the bulge through the active block lo..=hi
        for k in lo..hi {
            let (x, y) =
                if k == lo { (h[(lo, lo)] - shift, h[(lo + 1, lo)]) } else { (h[(k, k - 1)], h[(k + 1, k - 1)]) };
            let (c, s) = givens(x, y);
            let col_start = if k == lo { lo } else { k - 1 };
            for j in col_start..n {
                let a0 = h[(k, j)];
                let b0 = h[(k + 1, j)];
                h[(k, j)] = a0 * c + s * b0;
                h[(k + 1, j)] = -s.conj() * a0 + b0 * c;
            }
            if k > lo {
                h[(k + 1, k - 1)] = ZERO;
            }
            let row_end = (k + 2).min(hi);
            for i in 0..=row_end {
                let a0 = h[(i, k)];
                let b0 = h[(i, k + 1)];
                h[(i, k)] = a0 * c + b0 * s.conj();
                h[(i, k + 1)] = -a0 * s + b0 * c;
            }
            for i in 0..n {
                let a0 = q[(i, k)];
                let b0 = q[(i, k + 1)];
                q[(i, k)] = a0 * c + b0 * s.conj();
                q[(i, k + 1)] = -a0 * s + b0 * c;
            }
        }
    }

    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = ZERO;
        }
    }
    Ok(SchurForm { q, t: h })
}
