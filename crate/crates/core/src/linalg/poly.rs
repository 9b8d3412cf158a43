use num_complex::Complex64;

use super::{schur_decompose, ComplexMatrix};
use crate::error::Result;

/// Evaluates `sum_k coeffs[k] w^k` by Horner's rule.
pub fn poly_eval(coeffs: &[Complex64], w: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * w + c)
}

fn poly_eval_with_derivative(coeffs: &[Complex64], w: Complex64) -> (Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    coeffs.iter().rev().fold((zero, zero), |(p, dp), &c| (p * w + c, dp * w + p))
}

/// Drops trailing (highest-order) coefficients that are negligible relative
/// to the largest coefficient.
pub fn trim_polynomial(coeffs: &[Complex64], rel_tol: f64) -> Vec<Complex64> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut out = coeffs.to_vec();
    while let Some(last) = out.last() {
        if last.norm() <= rel_tol * scale {
            out.pop();
        } else {
            break;
        }
    }
    out
}

/// Roots of `sum_k coeffs[k] w^k` (ascending order) from the eigenvalues of
/// the companion matrix, each polished by a few Newton steps.
///
/// Leading coefficients below `1e-14` times the largest are discarded first,
/// which removes spurious roots at infinity. A constant or zero polynomial
/// has no roots.
pub fn poly_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let p = trim_polynomial(coeffs, 1e-14);
    if p.len() <= 1 {
        return Ok(vec![]);
    }
    let deg = p.len() - 1;
    let lead = p[deg];
    let companion = ComplexMatrix::from_fn(deg, deg, |i, j| {
        if j == deg - 1 {
            -p[i] / lead
        } else if i == j + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let raw = schur_decompose(&companion)?.eigenvalues();
    Ok(raw.into_iter().map(|z| polish(&p, z)).collect())
}

fn polish(p: &[Complex64], mut z: Complex64) -> Complex64 {
    let mut best = poly_eval(p, z).norm();
    for _ in 0..4 {
        let (v, dv) = poly_eval_with_derivative(p, z);
        if dv.norm() == 0.0 || v.norm() == 0.0 {
            break;
        }
        let candidate = z - v / dv;
        let val = poly_eval(p, candidate).norm();
        // Newton near a multiple root crawls; stop as soon as it stops paying
        if !(val < 0.5 * best) {
            break;
        }
        z = candidate;
        best = val;
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn linear_and_quadratic() {
        let r = poly_roots(&[c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0] - c(-0.5, 0.0)).norm() < 1e-15);

        // (w - 1/2)(w + 2/3) scaled: 1 - 0.5w - 3w^2 has roots 1/2, -2/3
        let r = sorted(poly_roots(&[c(1.0, 0.0), c(-0.5, 0.0), c(-3.0, 0.0)]).unwrap());
        assert!((r[0] - c(-2.0 / 3.0, 0.0)).norm() < 1e-14);
        assert!((r[1] - c(0.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn constant_has_no_roots() {
        assert!(poly_roots(&[c(1.0, 0.0)]).unwrap().is_empty());
        assert!(poly_roots(&[c(1.0, 0.0), c(1e-300, 0.0)]).unwrap().is_empty());
    }

    #[test]
    fn horner_matches_direct_sum() {
        let p = [c(1.0, 1.0), c(-2.0, 0.5), c(0.0, 3.0)];
        let w = c(0.3, -0.7);
        let direct = p[0] + p[1] * w + p[2] * w * w;
        assert!((poly_eval(&p, w) - direct).norm() < 1e-15);
    }
}
