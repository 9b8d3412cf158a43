//! Reproducible random instances.
//!
//! Every instance draws from its own SplitMix64 stream seeded with
//! `seed ^ salt` advanced by `index * 0x9E3779B97F4A7C15`, so instance `i`
//! is the same no matter how many others are generated or in which order.
//!
//! Distributions:
//! - complex normals are `(x + iy) / sqrt 2` with `x, y` standard normal;
//! - atoms are uniform on the circle; weights are twice a complex normal,
//!   clipped to modulus 5;
//! - contractions are a complex Gaussian matrix scaled to operator norm `u`
//!   with `u` uniform in `(0, 1]`.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;
use rand_xoshiro::SplitMix64;

use crate::linalg::{operator_norm, ComplexMatrix};
use crate::measure::{AtomicMeasure, UnitPoint};
use crate::operator_model::ContractionSystem;

pub type InstanceRng = SplitMix64;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
/// Largest weight modulus in random measures.
pub const MAX_WEIGHT: f64 = 5.0;

pub fn instance_rng(seed: u64, salt: u64, index: u64) -> InstanceRng {
    SplitMix64::seed_from_u64((seed ^ salt).wrapping_add(index.wrapping_mul(GOLDEN_GAMMA)))
}

pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let x: f64 = rng.sample(StandardNormal);
    let y: f64 = rng.sample(StandardNormal);
    Complex64::new(x, y) * FRAC_1_SQRT_2
}

pub fn complex_normal_vec<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| complex_normal(rng)).collect()
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

pub fn unit_point<R: Rng + ?Sized>(rng: &mut R) -> UnitPoint {
    UnitPoint::from_angle(rng.random::<f64>() * TAU)
}

/// Uniform point in the disk `|w| < radius`.
pub fn disk_point<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Complex64 {
    Complex64::from_polar(radius * rng.random::<f64>().sqrt(), rng.random::<f64>() * TAU)
}

fn clipped_weight<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let c = complex_normal(rng) * 2.0;
    let r = c.norm();
    if r > MAX_WEIGHT {
        c * (MAX_WEIGHT / r)
    } else {
        c
    }
}

/// Purely atomic measure with `1..=max_atoms` atoms.
pub fn atomic_measure<R: Rng + ?Sized>(rng: &mut R, max_atoms: usize) -> AtomicMeasure {
    let k = rng.random_range(1..=max_atoms.max(1));
    let atoms: Vec<_> = (0..k).map(|_| (unit_point(rng), clipped_weight(rng))).collect();
    AtomicMeasure::new(atoms, Complex64::new(0.0, 0.0))
}

/// Atomic measure plus a random Lebesgue part.
pub fn mixed_measure<R: Rng + ?Sized>(rng: &mut R, max_atoms: usize) -> AtomicMeasure {
    let atomic = atomic_measure(rng, max_atoms);
    let lebesgue = complex_normal(rng);
    AtomicMeasure::new(atomic.atoms().to_vec(), lebesgue)
}

/// Weights rescaled so that the total mass is exactly representable as 1:
/// resamples until `|sum c| >= 0.25`, divides by the sum, then corrects the
/// last weight for rounding.
fn normalize(weights: &mut [Complex64]) {
    let total: Complex64 = weights.iter().sum();
    for c in weights.iter_mut() {
        *c /= total;
    }
    let rest: Complex64 = weights[..weights.len() - 1].iter().sum();
    *weights.last_mut().expect("nonempty") = Complex64::new(1.0, 0.0) - rest;
}

/// Atomic measure with `mu(T) = 1`.
pub fn normalized_measure<R: Rng + ?Sized>(rng: &mut R, max_atoms: usize) -> AtomicMeasure {
    loop {
        let k = rng.random_range(1..=max_atoms.max(1));
        let points: Vec<UnitPoint> = (0..k).map(|_| unit_point(rng)).collect();
        let mut weights: Vec<Complex64> = (0..k).map(|_| clipped_weight(rng)).collect();
        if weights.iter().sum::<Complex64>().norm() < 0.25 {
            continue;
        }
        normalize(&mut weights);
        let mu = AtomicMeasure::new(points.into_iter().zip(weights), Complex64::new(0.0, 0.0));
        if (mu.mass() - 1.0).norm() <= 1e-14 {
            return mu;
        }
    }
}

/// Gaussian matrix rescaled to operator norm `u`, `u` uniform in `(0, 1]`.
pub fn contraction<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, n, n);
    let u = 1.0 - rng.random::<f64>();
    let norm = operator_norm(&g);
    if norm == 0.0 {
        return g;
    }
    g.scale(Complex64::new(u / norm, 0.0))
}

/// Random contraction of size `1..=max_dim` with complex normal vectors.
pub fn contraction_system<R: Rng + ?Sized>(rng: &mut R, max_dim: usize) -> ContractionSystem {
    let n = rng.random_range(1..=max_dim.max(1));
    loop {
        let a = contraction(rng, n);
        let phi = complex_normal_vec(rng, n);
        let psi = complex_normal_vec(rng, n);
        // the scaled norm can land a rounding error above 1
        if let Ok(s) = ContractionSystem::new(a, phi, psi) {
            return s;
        }
    }
}

/// `(A, L)` with `A` Gaussian of random scale (any norm up to 3) and `L - A`
/// a Gaussian perturbation of rank `1..=3` (at most `n`).
pub fn matrix_pair<R: Rng + ?Sized>(rng: &mut R, max_dim: usize) -> (ComplexMatrix, ComplexMatrix) {
    let n = rng.random_range(1..=max_dim.max(1));
    let scale = 3.0 * (1.0 - rng.random::<f64>());
    let a = gaussian_matrix(rng, n, n).scale(Complex64::new(scale / (n as f64).sqrt(), 0.0));
    let rank = rng.random_range(1..=3usize.min(n));
    let mut l = a.clone();
    for _ in 0..rank {
        let x = complex_normal_vec(rng, n);
        let y = complex_normal_vec(rng, n);
        l = &l + &ComplexMatrix::outer(&x, &y);
    }
    (a, l)
}

/// Real atoms `(s_j, c_j)` with `sum c_j = 1`; `s_j` are normals scaled by 2.
pub fn real_line_atoms<R: Rng + ?Sized>(rng: &mut R, max_atoms: usize) -> Vec<(f64, Complex64)> {
    loop {
        let k = rng.random_range(1..=max_atoms.max(1));
        let s: Vec<f64> = (0..k).map(|_| 2.0 * rng.sample::<f64, _>(StandardNormal)).collect();
        let mut weights: Vec<Complex64> = (0..k).map(|_| complex_normal(rng)).collect();
        if weights.iter().sum::<Complex64>().norm() < 0.25 {
            continue;
        }
        normalize(&mut weights);
        return s.into_iter().zip(weights).collect();
    }
}

/// Polynomial `prod (1 - w / r_k)` (so `h(0) = 1`) with `1..=max_degree`
/// roots of modulus in `[0.2, 3]`, none within `0.02` of the unit circle.
pub fn normalized_polynomial<R: Rng + ?Sized>(rng: &mut R, max_degree: usize) -> Vec<Complex64> {
    let k = rng.random_range(1..=max_degree.max(1));
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for _ in 0..k {
        let r = loop {
            let r = 0.2 + 2.8 * rng.random::<f64>();
            if (r - 1.0).abs() >= 0.02 {
                break r;
            }
        };
        let root = Complex64::from_polar(r, rng.random::<f64>() * TAU);
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (j, &c) in coeffs.iter().enumerate() {
            next[j] += c;
            next[j + 1] -= c / root;
        }
        coeffs = next;
    }
    coeffs
}
