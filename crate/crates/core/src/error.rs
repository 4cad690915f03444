use thiserror::Error;

/// Errors raised by the geometry, estimation and metric routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("at most one argument may be the point at infinity")]
    TwoInfinite,
    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(String),
    #[error("domain has no compact Jordan boundary: {0}")]
    UnboundedDomain(String),
    #[error("invalid boundary chart {leg} for {domain}")]
    BadChart { domain: String, leg: usize },
    #[error("closest-point iteration failed to converge at ({0}, {1})")]
    NewtonDivergence(f64, f64),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid domain parameters: {0}")]
    InvalidDomain(String),
    #[error("point {0} + {1}i lies outside the domain")]
    OutsideDomain(f64, f64),
    #[error("points are not connected inside the solver grid; increase the resolution")]
    Disconnected,
    #[error("no exact formula covers this pair")]
    ExactUnavailable,
    #[error("no lower-bound certificate is known for {0}")]
    NoCertificate(String),
    #[error("{0} has no Jordan boundary suitable for the Ptolemy estimator")]
    NotJordan(String),
    #[error("domain spec: {0}")]
    Spec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
