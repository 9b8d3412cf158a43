//! Frozen instances with known answers.

use num_complex::Complex64;

use crate::measure::{AtomicMeasure, UnitPoint};

/// Location of the double zero of [`double_zero_measure`].
pub const DOUBLE_ZERO: Complex64 = Complex64::new(0.4, 0.3);

/// The simple zero of [`double_zero_measure`]: `(-3 - i) / 14`.
pub const DOUBLE_ZERO_PARTNER: Complex64 = Complex64::new(-3.0 / 14.0, -1.0 / 14.0);

/// Atoms at `1, -1, i` whose shifted-mode function `h = 1 + w K sigma`
/// vanishes to second order at [`DOUBLE_ZERO`]. The weights solve
/// `h(w0) = 0`, `h'(w0) = 0`, `sigma(T) = 1`; they are exact decimals, so the
/// zero is double up to the rounding of the literals.
pub fn double_zero_measure() -> AtomicMeasure {
    AtomicMeasure::new(
        [
            (UnitPoint::from_angle(0.0), Complex64::new(-3.402, 0.414)),
            (UnitPoint::new(Complex64::new(-1.0, 0.0)).expect("unimodular"), Complex64::new(8.926, -4.782)),
            (UnitPoint::new(Complex64::new(0.0, 1.0)).expect("unimodular"), Complex64::new(-4.524, 4.368)),
        ],
        Complex64::new(0.0, 0.0),
    )
}

/// Numerator of the rational form of the double-zero instance, ascending.
pub const DOUBLE_ZERO_NUMERATOR: [Complex64; 4] =
    [Complex64::new(1.0, 0.0), Complex64::new(1.0, 1.0), Complex64::new(-8.96, 10.72), Complex64::new(-0.672, -17.696)];

/// `sigma = delta_{-1}`: `h = (1 + 2w) / (1 + w)`, zero at `-1/2`, both sides
/// of the bound equal to 1.
pub fn sharp_measure() -> AtomicMeasure {
    equality_measure(1.0)
}

/// `sigma = c delta_{-1}`: zero at `-1 / (1 + c)`, Blaschke sum `c`.
pub fn equality_measure(c: f64) -> AtomicMeasure {
    AtomicMeasure::dirac(UnitPoint::new(Complex64::new(-1.0, 0.0)).expect("unimodular"), Complex64::new(c, 0.0))
}

/// Normalized real-line atoms `(s_j, c_j)` whose transform
/// `h(l) = sum c_j / (s_j - l)` vanishes at [`REAL_LINE_ZERO`], in the upper
/// half-plane.
pub fn real_line_atoms() -> Vec<(f64, Complex64)> {
    vec![(-1.0, Complex64::new(0.65, 0.25)), (1.0, Complex64::new(0.35, -0.25))]
}

/// `c_1 - c_2` for the two atoms of [`real_line_atoms`].
pub const REAL_LINE_ZERO: Complex64 = Complex64::new(0.3, 0.5);
