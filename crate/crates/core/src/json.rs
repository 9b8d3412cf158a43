//! JSON file formats for measures, contraction systems and matrices.
//!
//! Complex numbers are written as `{"re": x, "im": y}`. Measure atom points
//! may alternatively be given as `{"angle_deg": t}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<ComplexJson> for Complex64 {
    fn from(z: ComplexJson) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// `#[serde(with = "crate::json::complex")]` adapter for `Complex64` fields.
pub mod complex {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        ComplexJson::from(*z).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        ComplexJson::deserialize(d).map(Into::into)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointJson {
    Cartesian { re: f64, im: f64 },
    Angle { angle_deg: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomJson {
    pub point: PointJson,
    pub weight: ComplexJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureJson {
    #[serde(default)]
    pub atoms: Vec<AtomJson>,
    #[serde(default)]
    pub lebesgue: ComplexJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemJson {
    #[serde(rename = "A")]
    pub a: Vec<Vec<ComplexJson>>,
    pub phi: Vec<ComplexJson>,
    pub psi: Vec<ComplexJson>,
}

/// A pair of equally sized square matrices, as consumed by the Schur-chain
/// and numerical-range checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixPairJson {
    #[serde(rename = "A")]
    pub a: Vec<Vec<ComplexJson>>,
    #[serde(rename = "L")]
    pub l: Vec<Vec<ComplexJson>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealAtomJson {
    pub s: f64,
    pub weight: ComplexJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealLineJson {
    pub atoms: Vec<RealAtomJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialJson {
    /// Ascending coefficients; the first must be 1.
    pub coeffs: Vec<ComplexJson>,
}

pub fn rows_to_complex(rows: &[Vec<ComplexJson>]) -> Vec<Vec<Complex64>> {
    rows.iter().map(|r| r.iter().map(|&z| z.into()).collect()).collect()
}

pub fn rows_to_json(rows: &[Vec<Complex64>]) -> Vec<Vec<ComplexJson>> {
    rows.iter().map(|r| r.iter().map(|&z| z.into()).collect()).collect()
}

pub fn vec_to_json(v: &[Complex64]) -> Vec<ComplexJson> {
    v.iter().map(|&z| z.into()).collect()
}

pub fn vec_from_json(v: &[ComplexJson]) -> Vec<Complex64> {
    v.iter().map(|&z| z.into()).collect()
}
