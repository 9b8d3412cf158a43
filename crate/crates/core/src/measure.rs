//! Finite complex measures on the unit circle: finitely many atoms plus a
//! multiple of normalized Lebesgue measure `m`.
//!
//! The Lebesgue part only ever contributes its zeroth moment to a Cauchy
//! transform (`K(c m) = c`), which is all the backward-shift calculus needs.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::json::{AtomJson, ComplexJson, MeasureJson, PointJson};

/// Points closer than this are treated as the same atom.
pub const ATOM_MERGE_TOL: f64 = 1e-12;
/// Inputs within this distance of the circle are pulled back onto it.
pub const RENORMALIZE_TOL: f64 = 1e-9;

/// A point on the unit circle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitPoint(Complex64);

impl UnitPoint {
    /// Accepts `z` with `| |z| - 1 | <= 1e-9` and renormalizes it.
    pub fn new(z: Complex64) -> Result<Self> {
        let r = z.norm();
        let deviation = (r - 1.0).abs();
        if !(deviation <= RENORMALIZE_TOL) {
            return Err(Error::OffCircle { re: z.re, im: z.im, deviation });
        }
        Ok(Self(z / r))
    }

    pub fn from_angle(theta: f64) -> Self {
        Self(Complex64::from_polar(1.0, theta))
    }

    pub fn from_angle_deg(deg: f64) -> Self {
        Self::from_angle(deg.to_radians())
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn conj(self) -> Self {
        Self(self.0.conj())
    }
}

/// Finite complex Borel measure `sum_j c_j delta_{zeta_j} + lebesgue * m`.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomicMeasure {
    atoms: Vec<(UnitPoint, Complex64)>,
    lebesgue: Complex64,
}

impl Default for AtomicMeasure {
    fn default() -> Self {
        Self::zero()
    }
}

impl AtomicMeasure {
    /// Builds a measure, merging atoms within [`ATOM_MERGE_TOL`] of each other
    /// and dropping atoms whose (merged) weight is exactly zero.
    pub fn new(atoms: impl IntoIterator<Item = (UnitPoint, Complex64)>, lebesgue: Complex64) -> Self {
        let mut merged: Vec<(UnitPoint, Complex64)> = Vec::new();
        for (p, w) in atoms {
            match merged.iter_mut().find(|(q, _)| (q.0 - p.0).norm() <= ATOM_MERGE_TOL) {
                Some((_, acc)) => *acc += w,
                None => merged.push((p, w)),
            }
        }
        merged.retain(|(_, w)| *w != Complex64::new(0.0, 0.0));
        Self { atoms: merged, lebesgue }
    }

    pub fn zero() -> Self {
        Self { atoms: vec![], lebesgue: Complex64::new(0.0, 0.0) }
    }

    /// `weight * delta_point`.
    pub fn dirac(point: UnitPoint, weight: Complex64) -> Self {
        Self::new([(point, weight)], Complex64::new(0.0, 0.0))
    }

    /// `c * m`.
    pub fn lebesgue_only(c: Complex64) -> Self {
        Self { atoms: vec![], lebesgue: c }
    }

    /// Convenience constructor from raw complex points (validated).
    pub fn from_points(atoms: &[(Complex64, Complex64)], lebesgue: Complex64) -> Result<Self> {
        let atoms = atoms.iter().map(|&(p, w)| UnitPoint::new(p).map(|u| (u, w))).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(atoms, lebesgue))
    }

    pub fn atoms(&self) -> &[(UnitPoint, Complex64)] {
        &self.atoms
    }

    pub fn lebesgue(&self) -> Complex64 {
        self.lebesgue
    }

    pub fn is_atomic(&self) -> bool {
        self.lebesgue == Complex64::new(0.0, 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty() && self.is_atomic()
    }

    /// Total mass `mu(T)`.
    pub fn mass(&self) -> Complex64 {
        self.atoms.iter().map(|(_, w)| w).sum::<Complex64>() + self.lebesgue
    }

    /// `||mu|| = sum |c_j| + |lebesgue|`.
    pub fn total_variation(&self) -> f64 {
        self.atoms.iter().map(|(_, w)| w.norm()).sum::<f64>() + self.lebesgue.norm()
    }

    /// `zeta_bar * mu(d zeta)`, the measure whose Cauchy transform is the
    /// backward shift of `K mu`. The Lebesgue part is dropped: `zeta_bar m`
    /// has an identically vanishing Cauchy transform.
    pub fn shift_measure(&self) -> Self {
        Self {
            atoms: self.atoms.iter().map(|&(p, w)| (p, w * p.0.conj())).collect(),
            lebesgue: Complex64::new(0.0, 0.0),
        }
    }

    /// Measure `zeta sigma(d zeta) + (h0 - c_sigma) m` with
    /// `c_sigma = int zeta d sigma`; its Cauchy transform is
    /// `h0 + w (K sigma)(w)`.
    ///
    /// A Lebesgue part in `sigma` would need the density `zeta` times `m`,
    /// which this measure class cannot hold, so it is rejected.
    pub fn inverse_shift(&self, h0: Complex64) -> Result<Self> {
        if !self.is_atomic() {
            return Err(Error::NonAtomicMeasure);
        }
        let first_moment: Complex64 = self.atoms.iter().map(|&(p, w)| w * p.0).sum();
        Ok(Self { atoms: self.atoms.iter().map(|&(p, w)| (p, w * p.0)).collect(), lebesgue: h0 - first_moment })
    }

    /// `mu_bar(Omega) = mu(Omega*)`: atoms moved to conjugate points.
    pub fn reflect_measure(&self) -> Self {
        Self { atoms: self.atoms.iter().map(|&(p, w)| (p.conj(), w)).collect(), lebesgue: self.lebesgue }
    }

    /// Complex-conjugate measure: conjugated weights at conjugated points.
    pub fn conjugate(&self) -> Self {
        Self { atoms: self.atoms.iter().map(|&(p, w)| (p.conj(), w.conj())).collect(), lebesgue: self.lebesgue.conj() }
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self::new(self.atoms.iter().map(|&(p, w)| (p, w * s)), self.lebesgue * s)
    }

    /// Writes `d mu = nu d|mu|` atom by atom.
    pub fn polar_decompose(&self) -> Result<PolarDecomposition> {
        if !self.is_atomic() {
            return Err(Error::NonAtomicMeasure);
        }
        let (modulus_weights, phases) = self.atoms.iter().map(|&(_, w)| (w.norm(), w / w.norm())).unzip();
        Ok(PolarDecomposition { modulus_weights, phases })
    }

    pub fn from_json(m: &MeasureJson) -> Result<Self> {
        let atoms = m
            .atoms
            .iter()
            .map(|a| {
                let p = match a.point {
                    PointJson::Cartesian { re, im } => UnitPoint::new(Complex64::new(re, im))?,
                    PointJson::Angle { angle_deg } => UnitPoint::from_angle_deg(angle_deg),
                };
                Ok((p, a.weight.into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(atoms, m.lebesgue.into()))
    }

    pub fn to_json(&self) -> MeasureJson {
        MeasureJson {
            atoms: self
                .atoms
                .iter()
                .map(|&(p, w)| AtomJson {
                    point: PointJson::Cartesian { re: p.0.re, im: p.0.im },
                    weight: ComplexJson::from(w),
                })
                .collect(),
            lebesgue: self.lebesgue.into(),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let parsed: MeasureJson = serde_json::from_str(s).map_err(|e| Error::InvalidInput(e.to_string()))?;
        Self::from_json(&parsed)
    }
}

/// Per-atom polar form: `weight_j = modulus_weights[j] * phases[j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarDecomposition {
    pub modulus_weights: Vec<f64>,
    pub phases: Vec<Complex64>,
}
