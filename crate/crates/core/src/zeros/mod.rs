//! Zeros of `h` in the open unit disk, located by three independent routes:
//! reciprocal eigenvalues of `L`, roots of the rational numerator, and
//! contour integration of `h'/h`.

mod contour;

use num_complex::Complex64;

use crate::error::Result;
use crate::linalg::{cluster_points, poly_roots, DEFAULT_CLUSTER_TOL};
use crate::operator_model::{ContractionSystem, DEFAULT_BOUNDARY_TOL};
use crate::transform::CauchyFunction;

pub use contour::{
    winding_number, zeros_via_argument_principle, ArgumentPrincipleOptions, DEFAULT_MAX_DEPTH, DEFAULT_RADIUS,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroMethod {
    ReciprocalEigenvalue,
    ArgumentPrinciple,
    NumeratorRoots,
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct Zero {
    #[serde(with = "crate::json::complex")]
    pub location: Complex64,
    pub multiplicity: usize,
}

/// Zeros in the disk `|w| < radius` with their orders, sorted by `(re, im)`.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ZeroSet {
    pub zeros: Vec<Zero>,
    pub method: ZeroMethod,
    /// Radius of the disk that was searched.
    pub radius: f64,
}

impl ZeroSet {
    fn sorted(mut zeros: Vec<Zero>, method: ZeroMethod, radius: f64) -> Self {
        zeros.sort_by(|a, b| a.location.re.total_cmp(&b.location.re).then(a.location.im.total_cmp(&b.location.im)));
        Self { zeros, method, radius }
    }

    /// Number of zeros counted with multiplicity.
    pub fn count(&self) -> usize {
        self.zeros.iter().map(|z| z.multiplicity).sum()
    }

    /// Keeps only zeros with `|z| < radius`.
    pub fn restricted(&self, radius: f64) -> Self {
        Self {
            zeros: self.zeros.iter().copied().filter(|z| z.location.norm() < radius).collect(),
            method: self.method,
            radius: radius.min(self.radius),
        }
    }

    pub fn conj(&self) -> Self {
        let zeros = self.zeros.iter().map(|z| Zero { location: z.location.conj(), ..*z }).collect();
        Self::sorted(zeros, self.method, self.radius)
    }
}

/// `sum multiplicity * (1/|z| - 1)`.
pub fn blaschke_sum(z: &ZeroSet) -> f64 {
    z.zeros.iter().fold(0.0, |acc, z| acc + z.multiplicity as f64 * (1.0 / z.location.norm() - 1.0))
}

/// Zeros as reciprocals of eigenvalues of `L = A - phi psi*` outside the
/// closed disk; multiplicities are cluster sizes.
pub fn zeros_via_l(s: &ContractionSystem) -> Result<ZeroSet> {
    let spectrum = s.build_l().eigenvalues_outside_disk(DEFAULT_BOUNDARY_TOL)?;
    let zeros =
        spectrum.outside.iter().map(|c| Zero { location: c.center.inv(), multiplicity: c.multiplicity }).collect();
    Ok(ZeroSet::sorted(zeros, ZeroMethod::ReciprocalEigenvalue, 1.0 / (1.0 + DEFAULT_BOUNDARY_TOL)))
}

/// Zeros as roots of the numerator of the exact rational form, restricted to
/// the open unit disk.
pub fn zeros_via_numerator_roots(f: &CauchyFunction) -> Result<ZeroSet> {
    let numerator = f.rational_form().numerator;
    let roots = poly_roots(&numerator)?;
    let inside: Vec<Complex64> = roots.into_iter().filter(|z| z.norm() < 1.0).collect();
    let zeros = cluster_points(&inside, DEFAULT_CLUSTER_TOL)
        .into_iter()
        .map(|c| Zero { location: c.center, multiplicity: c.multiplicity })
        .collect();
    Ok(ZeroSet::sorted(zeros, ZeroMethod::NumeratorRoots, 1.0))
}

/// Pairs two zero sets greedily by distance. Returns the largest pairing
/// distance, or `None` when the multisets cannot be matched (different
/// counts or multiplicities, or a pair farther apart than `tol`).
pub fn match_zero_sets(a: &ZeroSet, b: &ZeroSet, tol: f64) -> Option<f64> {
    if a.zeros.len() != b.zeros.len() {
        return None;
    }
    let mut used = vec![false; b.zeros.len()];
    let mut worst = 0.0f64;
    for za in &a.zeros {
        let (idx, dist) = b
            .zeros
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, zb)| (i, (zb.location - za.location).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))?;
        if dist > tol || b.zeros[idx].multiplicity != za.multiplicity {
            return None;
        }
        used[idx] = true;
        worst = worst.max(dist);
    }
    Some(worst)
}
