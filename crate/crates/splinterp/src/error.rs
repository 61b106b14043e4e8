//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong while constructing or applying the
/// interpolation operators.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("spline order must be at least 3 (got m = {m})")]
    OrderTooSmall { m: usize },

    #[error("need at least {required} samples (got {actual})")]
    TooFewSamples { required: usize, actual: usize },

    #[error("sampling points must be strictly increasing (violation at index {index})")]
    NotIncreasing { index: usize },

    #[error("sampling points must be finite (index {index})")]
    NonFinite { index: usize },

    #[error("operator build requires N >= 3m-3 (got N = {n}, m = {m})")]
    GridTooSmall { n: usize, m: usize },

    #[error("refined knot construction requires N >= 3 (got N = {n})")]
    RefinedGridTooSmall { n: usize },

    #[error("knot sequence must be non-decreasing (violation at position {index})")]
    KnotsNotSorted { index: usize },

    #[error("knot index {index} out of range")]
    IndexOutOfRange { index: isize },

    #[error("derivative order {order} out of range for spline order {m}")]
    DerivativeOrder { order: usize, m: usize },

    #[error("data length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("matrix dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("node spec already carries a replaced column")]
    ReplacementPresent,

    #[error("node spec carries no replaced column")]
    ReplacementMissing,

    #[error("denominator determinant is singular; sampling points may coincide")]
    SingularDenominator,

    #[error("boundary collocation system is singular; knot construction is inconsistent")]
    SingularCollocation,

    #[error("anchor B-spline vanishes at sample {index}; knot construction is inconsistent")]
    AnchorVanishes { index: usize },

    #[error("degenerate knot span")]
    DegenerateSpan,

    #[error("evaluation point outside the interpolation interval")]
    OutOfDomain,
}

pub type Result<T> = std::result::Result<T, Error>;
