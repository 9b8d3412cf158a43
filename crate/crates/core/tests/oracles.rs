//! Kernels checked against independent oracles: Faddeev-LeVerrier plus
//! Durand-Kerner for eigenvalues, Leibniz expansion for determinants,
//! closed forms for 2x2 singular values and segment distances, trapezoid
//! quadrature for Taylor coefficients, and central differences for
//! derivatives.

use approx::assert_relative_eq;
use blaschke_core::linalg::{
    determinant, dist_to_numerical_range, schur_decompose, singular_values, trace_norm, DEFAULT_ANGLES,
};
use blaschke_core::sampling::{atomic_measure, contraction_system, gaussian_matrix, instance_rng, mixed_measure};
use blaschke_core::transform::{eval_k, taylor_moment};
use blaschke_core::{AtomicMeasure, CauchyFunction, Complex64, ComplexMatrix, ContractionSystem};
use proptest::prelude::*;

const SALT: u64 = 0x0AC1E;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Characteristic polynomial `det(z - A)`, monic, descending coefficients.
fn faddeev_leverrier(a: &ComplexMatrix) -> Vec<Complex64> {
    let n = a.nrows();
    let mut coeffs = vec![c(1.0, 0.0)];
    let mut m = ComplexMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{k-1} I, c_k = -tr(A M_k) / k
        let mut next = a.matmul(&m);
        for i in 0..n {
            next[(i, i)] += coeffs[k - 1];
        }
        m = next;
        coeffs.push(-a.matmul(&m).trace() / k as f64);
    }
    coeffs
}

fn durand_kerner(monic: &[Complex64]) -> Vec<Complex64> {
    let n = monic.len() - 1;
    let eval = |z: Complex64| monic.iter().fold(c(0.0, 0.0), |acc, &a| acc * z + a);
    let scale = 1.0 + monic.iter().skip(1).map(|a| a.norm()).fold(0.0, f64::max);
    let mut roots: Vec<Complex64> =
        (0..n).map(|k| c(0.4, 0.9).powu(k as u32) * scale * 0.5 + c(0.01 * k as f64, 0.0)).collect();
    for _ in 0..5000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let denom: Complex64 = (0..n).filter(|&j| j != i).map(|j| roots[i] - roots[j]).product();
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 * scale {
            break;
        }
    }
    roots
}

/// Largest distance in an optimal greedy pairing of two equal-size sets.
fn pairing_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut free: Vec<Complex64> = b.to_vec();
    let mut worst = 0.0f64;
    for &x in a {
        let (k, d) = free.iter().enumerate().map(|(k, &y)| (k, (x - y).norm())).fold((0, f64::INFINITY), |m, p| {
            if p.1 < m.1 {
                p
            } else {
                m
            }
        });
        worst = worst.max(d);
        free.swap_remove(k);
    }
    worst
}

fn leibniz(a: &ComplexMatrix) -> Complex64 {
    let n = a.nrows();
    if n == 1 {
        return a[(0, 0)];
    }
    (0..n)
        .map(|j| {
            let minor = ComplexMatrix::from_fn(n - 1, n - 1, |r, s| a[(r + 1, if s < j { s } else { s + 1 })]);
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            a[(0, j)] * leibniz(&minor) * sign
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn schur_eigenvalues_match_characteristic_roots(seed in any::<u64>(), n in 1usize..=6) {
        let a = gaussian_matrix(&mut instance_rng(seed, SALT, 0), n, n);
        let schur = schur_decompose(&a).unwrap();
        let oracle = durand_kerner(&faddeev_leverrier(&a));
        // random Gaussian spectra are simple, so roots are well conditioned
        prop_assert!(pairing_distance(&schur.eigenvalues(), &oracle) < 1e-7);
        let back = schur.reconstruct();
        let err = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| (back[(i, j)] - a[(i, j)]).norm()).fold(0.0, f64::max);
        prop_assert!(err < 1e-12 * (1.0 + a.frobenius_norm()));
    }

    #[test]
    fn lu_determinant_matches_leibniz(seed in any::<u64>(), n in 1usize..=5) {
        let a = gaussian_matrix(&mut instance_rng(seed, SALT, 1), n, n);
        let (lu, exact) = (determinant(&a).unwrap(), leibniz(&a));
        prop_assert!((lu - exact).norm() <= 1e-12 * (1.0 + exact.norm()));
    }

    #[test]
    fn singular_values_of_2x2_match_closed_form(seed in any::<u64>()) {
        let a = gaussian_matrix(&mut instance_rng(seed, SALT, 2), 2, 2);
        let f2 = a.frobenius_norm().powi(2);
        let d = leibniz(&a).norm();
        let disc = (f2 * f2 - 4.0 * d * d).max(0.0).sqrt();
        let (s1, s2) = (((f2 + disc) / 2.0).sqrt(), ((f2 - disc) / 2.0).max(0.0).sqrt());
        let mut sv = singular_values(&a);
        sv.sort_by(|x, y| y.partial_cmp(x).unwrap());
        prop_assert!((sv[0] - s1).abs() < 1e-12 * (1.0 + s1));
        prop_assert!((sv[1] - s2).abs() < 1e-7 * (1.0 + s1));
        prop_assert!((trace_norm(&a) - (s1 + s2)).abs() < 1e-7 * (1.0 + s1));
    }

    #[test]
    fn numerical_range_of_normal_2x2_is_a_segment(seed in any::<u64>()) {
        let v = gaussian_matrix(&mut instance_rng(seed, SALT, 3), 1, 3);
        let (p, q, lambda) = (v[(0, 0)], v[(0, 1)], v[(0, 2)] * 3.0);
        let a = ComplexMatrix::from_diagonal(&[p, q]);
        let t = (((lambda - p) * (q - p).conj()).re / (q - p).norm_sqr()).clamp(0.0, 1.0);
        let exact = (lambda - (p + (q - p) * t)).norm();
        prop_assert!((dist_to_numerical_range(&a, lambda, DEFAULT_ANGLES) - exact).abs() < 1e-9 * (1.0 + exact));
    }

    #[test]
    fn derivative_matches_central_difference(seed in any::<u64>(), shifted in any::<bool>()) {
        let mut rng = instance_rng(seed, SALT, 4);
        let mu = atomic_measure(&mut rng, 6);
        let f = if shifted { CauchyFunction::shifted(mu) } else { CauchyFunction::direct(mu) };
        let w = Complex64::from_polar(0.6 * (seed % 97) as f64 / 97.0, (seed % 89) as f64);
        let h = 1e-5;
        for dir in [c(1.0, 0.0), c(0.0, 1.0)] {
            let fd = (f.eval_h(w + dir * h).unwrap() - f.eval_h(w - dir * h).unwrap()) / (dir * 2.0 * h);
            let exact = f.eval_h_derivative(w).unwrap();
            prop_assert!((fd - exact).norm() < 1e-6 * (1.0 + exact.norm()), "{fd} vs {exact}");
        }
    }

    #[test]
    fn taylor_moments_match_circle_quadrature(seed in any::<u64>()) {
        let mu = mixed_measure(&mut instance_rng(seed, SALT, 5), 6);
        // trapezoid on |w| = r aliases coefficient n with n + N; r^N kills the alias
        let (r, points) = (0.5, 256usize);
        let values: Vec<Complex64> = (0..points)
            .map(|k| eval_k(&mu, Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / points as f64)).unwrap())
            .collect();
        for n in 0..8u32 {
            let coeff: Complex64 = values
                .iter()
                .enumerate()
                .map(|(k, &v)| v * Complex64::from_polar(1.0, -std::f64::consts::TAU * (n as usize * k) as f64 / points as f64))
                .sum::<Complex64>()
                / (points as f64 * r.powi(n as i32));
            let exact = taylor_moment(&mu, n);
            prop_assert!((coeff - exact).norm() < 1e-10 * (1.0 + mu.total_variation()), "n = {n}");
        }
    }

    #[test]
    fn conjugation_symmetry(seed in any::<u64>()) {
        let mut rng = instance_rng(seed, SALT, 6);
        let mu = mixed_measure(&mut rng, 6);
        let w = blaschke_core::sampling::disk_point(&mut rng, 0.95);
        let lhs = eval_k(&mu.conjugate(), w).unwrap();
        let rhs = eval_k(&mu, w.conj()).unwrap().conj();
        prop_assert!((lhs - rhs).norm() < 1e-12 * (1.0 + mu.total_variation() / (1.0 - w.norm())));
    }

    #[test]
    fn resolvent_form_matches_cauchy_transform(seed in any::<u64>()) {
        let mut rng = instance_rng(seed, SALT, 7);
        let sigma = atomic_measure(&mut rng, 8);
        let s = ContractionSystem::from_measure(&sigma).unwrap();
        let w = blaschke_core::sampling::disk_point(&mut rng, 0.9);
        let via_resolvent = s.eval_h_resolvent(w).unwrap();
        let via_k = c(1.0, 0.0) + w * eval_k(&sigma, w).unwrap();
        prop_assert!((via_resolvent - via_k).norm() < 1e-11 * (1.0 + sigma.total_variation() / (1.0 - w.norm())));
    }

    #[test]
    fn taylor_coefficients_are_neumann_moments(seed in any::<u64>()) {
        let s = contraction_system(&mut instance_rng(seed, SALT, 8), 6);
        let coeffs = s.taylor_coefficients(8);
        prop_assert_eq!(coeffs[0], c(1.0, 0.0));
        // <A^{n-1} phi, psi> by repeated matvec
        let mut v = s.phi().to_vec();
        for coeff in coeffs.iter().skip(1) {
            let inner: Complex64 = v.iter().zip(s.psi()).map(|(x, y)| x * y.conj()).sum();
            prop_assert!((coeff - inner).norm() < 1e-12 * (1.0 + s.norm_product()));
            v = s.a().matvec(&v);
        }
    }
}

#[test]
fn cauchy_transform_of_single_atom() {
    let mu = AtomicMeasure::from_points(&[(c(0.0, 1.0), c(2.0, -1.0))], c(0.0, 0.0)).unwrap();
    let w = c(0.3, 0.2);
    // 1 / (1 - w conj(i)) = 1 / (1 + i w)
    let exact = c(2.0, -1.0) / (c(1.0, 0.0) + c(0.0, 1.0) * w);
    let got = eval_k(&mu, w).unwrap();
    assert_relative_eq!(got.re, exact.re, epsilon = 1e-15);
    assert_relative_eq!(got.im, exact.im, epsilon = 1e-15);
}

#[test]
fn oracles_agree_on_a_known_spectrum() {
    // upper triangular: eigenvalues are the diagonal
    let a = ComplexMatrix::from_rows(&[
        vec![c(1.0, 0.0), c(2.0, 1.0), c(0.0, 3.0)],
        vec![c(0.0, 0.0), c(-0.5, 0.5), c(1.0, 0.0)],
        vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, -2.0)],
    ])
    .unwrap();
    let diag = a.diagonal();
    assert!(pairing_distance(&durand_kerner(&faddeev_leverrier(&a)), &diag) < 1e-12);
    assert_relative_eq!(leibniz(&a).re, (diag[0] * diag[1] * diag[2]).re, epsilon = 1e-14);
}
