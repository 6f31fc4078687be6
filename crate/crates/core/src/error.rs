//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("axis {axis}: p^2 + |q|^2 = {value} breaks unitarity by more than {tol}")]
    UnitarityViolation { axis: usize, value: f64, tol: f64 },

    #[error("axis {axis}: |p| = {value} is too close to 1; the axis shift degenerates")]
    DegenerateShift { axis: usize, value: f64 },

    #[error("coin vector has squared norm {value}, expected 1 within {tol}")]
    UnnormalizedChi { value: f64, tol: f64 },

    #[error("operands live on different windows ({left} vs {right})")]
    WindowMismatch { left: String, right: String },

    #[error("shape mismatch for {what}: expected {expected}, found {found}")]
    ShapeMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("requested {requested} amplitudes, exceeding the budget of {budget}")]
    ResourceLimit { requested: usize, budget: usize },

    #[error("eigensolver did not converge ({context})")]
    EigensolverFailure { context: String },

    #[error("probe point {lambda} lies {place} the band [{lo}, {hi}]")]
    ProbeDomainError {
        lambda: f64,
        lo: f64,
        hi: f64,
        place: &'static str,
    },

    #[error("the birth recipe has no usable case: {context}")]
    CaseUnavailable { context: String },

    #[error("all recipe components vanish; nothing to assemble")]
    ZeroVector,

    #[error("eigen-residual {residual:.3e} exceeds {limit:.1e}; a recipe precondition was violated")]
    ResidualTooLarge { residual: f64, limit: f64 },

    #[error("anchor ({a}, {b}) yields the zero kernel element")]
    AnchorClash { a: i64, b: i64 },

    #[error("operation requires n = {required}, got n = {actual}")]
    DimensionError { required: usize, actual: usize },

    #[error("initial state has norm {norm}, expected 1 within {tol}")]
    UnnormalizedInitial { norm: f64, tol: f64 },

    #[error("inconclusive: {0}")]
    Inconclusive(String),
}
