//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Crate-wide error enum. Variants carry the residual or offending value so
/// callers (and the CLI) can report a machine-readable reason.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Matrix is not Hermitian within tolerance.
    #[error("not-hermitian: max |M - M^dag| entry = {0:.3e}")]
    NotHermitian(f64),

    /// Trace differs from 1 within tolerance.
    #[error("not-normalized: trace = {0}")]
    NotNormalized(f64),

    /// An entry coupling the even and odd parity sectors is nonzero.
    #[error("ssr-violated: max off-sector entry = {0:.3e}")]
    SsrViolated(f64),

    /// A sector block fails positive semidefiniteness.
    #[error("not-positive: {0}")]
    NotPositive(String),

    /// A scalar argument lies outside its documented domain.
    #[error("out-of-range: {0}")]
    OutOfRange(String),

    /// Both eigenvalues of a sector block coincide and the block is diagonal,
    /// so the sector asymmetry xi is undefined.
    #[error("degenerate-sector: w = v and b = 0, xi is undefined")]
    DegenerateSector,

    /// Input to a density-matrix routine is not a density matrix.
    #[error("not-a-state: {0}")]
    NotAState(String),

    /// Matrix expected to be unitary is not, within tolerance.
    #[error("not-unitary: max |U U^dag - I| entry = {0:.3e}")]
    NotUnitary(f64),

    /// Bogoliubov parameters violate their normalization constraints.
    #[error("invalid-params: {0}")]
    InvalidParams(String),

    /// A 2x2 operator has both a nonzero diagonal and a nonzero off-diagonal,
    /// so it carries no definite fermion parity.
    #[error("mixed-parity: {0}")]
    MixedParity(String),

    /// Optimized ensemble fails to reconstruct the input state.
    #[error("reconstruction-failed: max residual = {0:.3e}")]
    ReconstructionFailed(f64),

    /// Oracle configuration is unusable.
    #[error("invalid-config: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
