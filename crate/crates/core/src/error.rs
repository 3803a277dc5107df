use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph size {0} is too small (need at least {1} vertices)")]
    TooFewVertices(usize, usize),

    #[error("marked vertex {marked} out of range for {n} vertices")]
    MarkedOutOfRange { marked: usize, n: usize },

    #[error("barrier phase {0} outside [0, pi/2]")]
    PhaseOutOfRange(f64),

    #[error("barrier amplitudes ({alpha}, {beta}) are not of the form (cos phi, i sin phi)")]
    UnsupportedAmplitudes { alpha: String, beta: String },

    #[error("barrier magnitude {0} outside [0, 1]")]
    BarrierOutOfRange(f64),

    #[error("transition reduction epsilon {0} outside [0, 1)")]
    EpsilonOutOfRange(f64),

    #[error("jumping rate {0} must be positive and finite")]
    InvalidRate(f64),

    #[error("the walk never hops: search is blocked")]
    Blocked,

    #[error("tangent singularity in {0}")]
    TangentSingularity(&'static str),

    #[error("non-finite parameter: {0}")]
    NonFinite(&'static str),

    #[error("state dimension {got} does not match {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error("invalid value for `{key}`: {msg}")]
    InvalidValue { key: String, msg: String },

    #[error("csv: {0}")]
    Csv(String),
}
