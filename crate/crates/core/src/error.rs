use thiserror::Error;

/// Errors raised by the spectrum, ansatz, phase-boundary and ED routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("amplitude overflow guard: {kind} window of length {len} exceeds the limit of {limit}")]
    OverflowGuard {
        kind: &'static str,
        len: usize,
        limit: usize,
    },

    #[error("no crossing of the particle and hole boundaries in J/g bracket [{lo}, {hi}]: {reason}")]
    NoCrossing { lo: f64, hi: f64, reason: String },

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    Solver { iterations: usize, residual: f64 },

    #[error("sector of dimension {dimension} needs about {required_bytes} bytes, above the {ceiling_bytes}-byte ceiling")]
    Resource {
        dimension: u128,
        required_bytes: u128,
        ceiling_bytes: u128,
    },

    #[error("hamiltonian maps a state out of its excitation sector (row {row})")]
    SectorLeak { row: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
