use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cone needs at least one generator")]
    EmptyGenerators,
    #[error("generator {0} is the zero vector")]
    ZeroGenerator(usize),
    #[error("cone is not pointed: -g{0} lies in the cone")]
    NotPointed(usize),
    #[error("generators span a {rank}-dimensional subspace of R^{dim}")]
    DegenerateSpan { rank: usize, dim: usize },
    #[error("dual enumeration supports dimension <= {max}, got {dim}")]
    UnsupportedDimension { dim: usize, max: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point set is empty")]
    EmptySet,
    #[error("spectrum is empty")]
    EmptySpectrum,
    #[error("exponent {exponent:.3} exceeds the overflow guard")]
    OverflowGuard { exponent: f64 },
    #[error("bad quadrature grid: {0}")]
    BadGrid(String),
    #[error("restricted frequencies of terms {0} and {1} collide")]
    CollidingFrequencies(usize, usize),
    #[error("no almost period found in the search box")]
    NotFound,
    #[error("every quadrature sample was clipped")]
    AllClipped,
    #[error("finite-difference step too small for the quadrature noise (gradient stderr {stderr:.3e})")]
    StepTooSmall { stderr: f64 },
    #[error("function vanishes on the tracked path near {at:?}")]
    ZeroOnPath { at: (f64, f64) },
    #[error("sample {0} is not negative")]
    NotNegative(usize),
    #[error("contour zero persisted after perturbation")]
    BoundaryZeroPersistent,
    #[error("search budget exhausted")]
    BudgetExhausted,
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
