use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input violates a structural invariant (names, degrees, weights).
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("not a Lie ideal: [{0}, {1}] leaves the subspace")]
    NotAnIdeal(String, String),
    #[error("Lie algebra is not nilpotent: lower central series stabilizes at dimension {0}")]
    NotNilpotent(usize),
    #[error("operands belong to different algebras")]
    OwnerMismatch,
    #[error("element is not group-like: coproduct residual {0}")]
    NotGroupLike(String),
    #[error("algebra is not quadratic: d({0}) has a component outside wedge degree 2")]
    NotQuadratic(String),
    #[error("algebra is not minimal: d({0}) has a linear component")]
    NotMinimal(String),
    #[error("cohomology in degree 0 is not one-dimensional (dim {0})")]
    NotConnected(usize),
    #[error("truncation window exhausted: {0}")]
    WindowExhausted(String),
    #[error("validation failed: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
