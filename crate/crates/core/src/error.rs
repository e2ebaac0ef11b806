use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("complex vector must have at least one entry")]
    EmptyVector,

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("distance must be positive, got {0} m")]
    NonPositiveDistance(f64),

    #[error("nodes coincide: {0} distance is zero")]
    CoincidentNodes(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Relay channels to destination and eavesdropper are parallel (or
    /// `N = 1`), so there is no room to null at the destination and still
    /// reach the eavesdropper.
    #[error("relay channels are degenerate: nulling subspace is empty")]
    DegenerateChannels,

    /// The source power is too low for the secrecy-rate target to be
    /// reachable even with infinite jamming.
    #[error("source power {ps} mW cannot reach the secrecy-rate target")]
    InfeasiblePs { ps: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}
