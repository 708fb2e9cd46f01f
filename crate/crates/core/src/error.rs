use thiserror::Error;

/// Errors raised by the toolkit. Every operation is a pure function, so an
/// error always describes the inputs, never a transient condition.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The adaptive Fock truncation ran out of doublings.
    #[error("Fock truncation failed: tail mass {tail:.3e} at Nmax = {nmax} exceeds {tolerance:.1e}")]
    TruncationFailure {
        nmax: usize,
        tail: f64,
        tolerance: f64,
    },

    /// Zero readout variance with a nonzero signal: the operating point is ill-posed.
    #[error("degenerate readout: signal {signal:.3e} with zero noise")]
    DegenerateReadout { signal: f64 },

    #[error("incompatible combination: {0}")]
    Incompatible(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
