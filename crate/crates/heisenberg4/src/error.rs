use thiserror::Error;

/// Errors shared across the linear-algebra kernel, the model builders and
/// the measure evaluations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("matrix is not Hermitian (max |M - M\u{2020}| = {0:.3e})")]
    NotHermitian(f64),

    #[error(
        "Jacobi iteration did not converge: off-diagonal norm {norm:.3e} after {sweeps} sweeps"
    )]
    NoConvergence { norm: f64, sweeps: usize },

    #[error("negative eigenvalue {0:.3e} beyond the round-off clamp")]
    NegativeEigenvalue(f64),

    #[error("invalid qubit subset: {0}")]
    BadSubset(String),

    #[error("site {0} outside 1..={1}")]
    BadSite(usize, usize),

    #[error("basis index {0} outside matrix of dimension {1}")]
    BadIndex(usize, usize),

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("value {value} outside {domain}")]
    Domain { value: f64, domain: &'static str },

    #[error("alpha = -1 freezes the phase: no finite sensitivity times exist")]
    FrozenLine,
}

pub type Result<T> = std::result::Result<T, Error>;
