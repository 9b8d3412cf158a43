//! Distance to the numerical range via its support function.
//!
//! For the compact convex set `Num(A)`, the support function in direction
//! `e^{i theta}` is the top eigenvalue of `Re(e^{-i theta} A)`, and
//! `dist(lambda, Num(A)) = max_theta (Re(e^{-i theta} lambda) - h(theta))^+`.
//! Sampling theta on a grid can only under-estimate this maximum.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::{hermitian_max_eigenvalue, ComplexMatrix};

pub const DEFAULT_ANGLES: usize = 720;
const MIN_ANGLES: usize = 16;
const REFINE_STEPS: usize = 64;

/// Support function of `Num(A)` tabulated on a uniform angle grid.
#[derive(Clone, Debug)]
pub struct NumericalRange {
    a: ComplexMatrix,
    angles: Vec<f64>,
    support: Vec<f64>,
}

impl NumericalRange {
    /// Tabulates the support function on `angles` (at least 16) directions.
    pub fn new(a: &ComplexMatrix, angles: usize) -> Self {
        let count = angles.max(MIN_ANGLES);
        let grid: Vec<f64> = (0..count).map(|k| TAU * k as f64 / count as f64).collect();
        let support = grid.iter().map(|&t| support_function(a, t)).collect();
        Self { a: a.clone(), angles: grid, support }
    }

    pub fn support_at(&self, theta: f64) -> f64 {
        support_function(&self.a, theta)
    }

    /// Distance from `lambda` to `Num(A)`, never larger than the true value.
    pub fn distance(&self, lambda: Complex64) -> f64 {
        let gap = |t: f64, h: f64| (Complex64::from_polar(1.0, -t) * lambda).re - h;
        let (best_idx, best) = self
            .angles
            .iter()
            .zip(&self.support)
            .map(|(&t, &h)| gap(t, h))
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, g)| if g > acc.1 { (i, g) } else { acc });
        let step = TAU / self.angles.len() as f64;
        // gap(., .) is Lipschitz in theta with constant |lambda| + ||A||
        if best + (lambda.norm() + self.a.frobenius_norm()) * step < 0.0 {
            return 0.0;
        }
        let center = self.angles[best_idx];
        let refined = golden_max(center - step, center + step, |t| gap(t, self.support_at(t)));
        best.max(refined).max(0.0)
    }
}

fn support_function(a: &ComplexMatrix, theta: f64) -> f64 {
    let n = a.nrows();
    let rot = Complex64::from_polar(1.0, -theta);
    let herm = ComplexMatrix::from_fn(n, n, |i, j| (rot * a[(i, j)] + (rot * a[(j, i)]).conj()) * 0.5);
    hermitian_max_eigenvalue(&herm).expect("Hermitian QL on a finite matrix")
}

fn golden_max(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut best = f1.max(f2);
    for _ in 0..REFINE_STEPS {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        }
        best = best.max(f1).max(f2);
        if hi - lo < 1e-15 {
            break;
        }
    }
    best
}

/// Distance from `lambda` to the numerical range of `a` using `angles` grid
/// directions (at least 16) plus one golden-section refinement around the
/// best grid direction.
pub fn dist_to_numerical_range(a: &ComplexMatrix, lambda: Complex64, angles: usize) -> f64 {
    NumericalRange::new(a, angles).distance(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn segment_numerical_range() {
        let a = ComplexMatrix::from_diagonal(&[c(0.5, 0.0), c(-0.5, 0.0)]);
        assert!((dist_to_numerical_range(&a, c(2.0, 0.0), DEFAULT_ANGLES) - 1.5).abs() < 1e-12);
        // point on the segment
        assert_eq!(dist_to_numerical_range(&a, c(0.1, 0.0), DEFAULT_ANGLES), 0.0);
    }

    #[test]
    fn zero_matrix_gives_modulus() {
        let a = ComplexMatrix::zeros(2, 2);
        assert!((dist_to_numerical_range(&a, c(3.0, 4.0), DEFAULT_ANGLES) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn diagonal_entry_is_member() {
        let a = ComplexMatrix::from_rows(&[vec![c(0.3, 0.2), c(1.0, 0.0)], vec![c(0.0, 0.5), c(-0.4, 0.1)]]).unwrap();
        assert!(dist_to_numerical_range(&a, a[(0, 0)], DEFAULT_ANGLES) < 1e-12);
    }

    #[test]
    fn refinement_never_lowers_distance() {
        let a = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]]).unwrap();
        // Num = closed disk of radius 1/2
        let lambda = c(0.7, 1.3);
        let coarse = dist_to_numerical_range(&a, lambda, 16);
        let fine = dist_to_numerical_range(&a, lambda, 720);
        let exact = lambda.norm() - 0.5;
        assert!(coarse <= exact + 1e-12 && fine <= exact + 1e-12);
        assert!((fine - exact).abs() < 1e-12);
    }
}
