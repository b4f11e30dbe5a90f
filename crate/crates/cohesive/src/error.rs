use thiserror::Error;

/// Errors raised while constructing or evaluating cohesive laws.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum LawError {
    #[error("opening must be nonnegative, got {0}")]
    NegativeOpening(f64),

    #[error("initial slope indicator lambda = {lambda} is out of range (must satisfy 0 < lambda < 1/sqrt(alpha) = {limit})")]
    LambdaOutOfRange { lambda: f64, limit: f64 },

    #[error("invalid law parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("no bracketable root for the intrinsic threshold (base law must be concave with positive initial slope)")]
    NoRoot,

    #[error("history component z{index} is zero but an unloading branch was requested")]
    DegenerateHistory { index: usize },

    #[error("laws were built from different loading densities")]
    IncompatibleLaws,
}

/// Errors raised by the laminate solver.
#[derive(Error, Debug, Clone)]
pub enum SolverError {
    #[error("stiffness operator is singular: the Dirichlet boundary is empty")]
    SingularOperator,

    #[error("Dirichlet trace violated by {0:.3e}")]
    BoundaryMismatch(f64),

    #[error("descent did not converge after {iterations} iterations (residual {residual:.3e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("fixed-point iteration stalled after {iterations} iterations (residual {residual:.3e})")]
    FixedPointStall { iterations: usize, residual: f64 },

    #[error(transparent)]
    Law(#[from] LawError),
}

/// Errors raised while reading configuration files.
#[derive(Error, Debug)]
pub enum ConfigError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("malformed config {path}: {message}")]
    Parse { path: String, message: String },

    #[error("config {path}: {message}")]
    Invalid { path: String, message: String },
}
