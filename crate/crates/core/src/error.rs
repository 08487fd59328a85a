use thiserror::Error;

/// Errors produced by the library.
///
/// `DimensionMismatch`, `IndexOutOfRange` and `InvalidParameter` indicate bad
/// input; the remaining variants indicate a numerical breakdown encountered
/// during an otherwise valid computation (poles, branch cuts, divergent
/// integrals).
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index out of range: {what} = {index}, bound {bound}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("resonant parameters (pole): {0}")]
    ResonantPole(String),

    #[error("branch cut violation: {0}")]
    BranchCut(String),

    #[error("non-integrable singularity: {0}")]
    NonIntegrable(String),

    #[error("zero base with non-integer exponent: {0}")]
    ZeroBase(String),

    #[error("non-finite value rejected: {0}")]
    NonFinite(String),
}

impl Error {
    /// True when the error is an input problem rather than a numerical one.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch(_)
                | Error::IndexOutOfRange { .. }
                | Error::InvalidParameter(_)
        )
    }
}
