use thiserror::Error;

/// Errors produced by the verification kernels.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point {re}+{im}i is off the unit circle (| |z| - 1 | = {deviation:e})")]
    OffCircle { re: f64, im: f64, deviation: f64 },
    #[error("measure has a non-zero Lebesgue component; an atomic measure is required")]
    NonAtomicMeasure,
    #[error("measure has no atoms")]
    EmptyMeasure,
    #[error("point |w| = {modulus} lies outside the open unit disk")]
    OutsideDisk { modulus: f64 },
    #[error("spectral parameter |lambda| = {modulus} must exceed 1")]
    OutsideDomain { modulus: f64 },
    #[error("QR iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("matrix is not Hermitian (relative asymmetry {asymmetry:e})")]
    NotHermitian { asymmetry: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("operator norm {norm} exceeds 1; not a contraction")]
    NotAContraction { norm: f64 },
    #[error("resolvent I - wA is numerically singular")]
    SingularResolvent,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("contour passes through a zero after {nudges} radius nudges")]
    ContourThroughZero { nudges: usize },
    #[error("subdivision exceeded maximum depth {max_depth}")]
    MaxDepthExceeded { max_depth: usize },
    #[error("winding number did not settle to an integer (last estimate {estimate})")]
    WindingNoConvergence { estimate: f64 },
    #[error("measure is not normalized: total mass {re}+{im}i, expected 1")]
    NotNormalized { re: f64, im: f64 },
    #[error("polynomial must satisfy h(0) = 1")]
    NotUnitAtOrigin,
    #[error("polynomial has a zero on the unit circle (min |h| = {min_modulus:e})")]
    ZeroOnBoundary { min_modulus: f64 },
    #[error("boundary quadrature did not converge (last change {change:e})")]
    QuadratureNoConvergence { change: f64 },
    #[error("unitary is not numerically diagonalizable (off-diagonal residual {residual:e})")]
    NotDiagonalizable { residual: f64 },
    #[error("defect intertwining A D_A = D_A* A fails (residual {residual:e})")]
    IntertwiningViolated { residual: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
