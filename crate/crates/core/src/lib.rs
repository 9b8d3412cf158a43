//! Numerical verification of Blaschke-type bounds on zeros of Cauchy
//! transforms on the unit disk.
//!
//! The crate builds finite-dimensional instances of every object involved:
//! atomic measures on the unit circle and their Cauchy transforms, the
//! rank-one perturbation `L = A - phi psi*` of a contraction whose eigenvalues
//! outside the closed disk are reciprocals of zeros, unitary dilations with
//! their spectral measures, and the trace-norm / numerical-range inequality
//! that drives everything. Each inequality is checked numerically and
//! reported as a [`BoundReport`].

pub mod bounds;
pub mod dilation;
pub mod error;
pub mod fixtures;
pub mod json;
pub mod linalg;
pub mod measure;
pub mod operator_model;
pub mod sampling;
pub mod suite;
pub mod transform;
pub mod zeros;

pub use num_complex::Complex64;

pub use bounds::BoundReport;
pub use dilation::{DilationResult, SpectralMeasureExtract};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, EigenCluster, SchurForm};
pub use measure::{AtomicMeasure, PolarDecomposition, UnitPoint};
pub use operator_model::{ContractionSystem, PerturbedOperator};
pub use transform::{CauchyFunction, Mode, RationalForm};
pub use zeros::{Zero, ZeroMethod, ZeroSet};
