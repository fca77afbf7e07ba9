use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid figure: {0}")]
    InvalidFigure(String),

    #[error("invalid realization: {0}")]
    InvalidRealization(String),

    #[error("realization has {n} sets but at most {cap} are supported")]
    Oversize { n: usize, cap: usize },

    #[error("boundary of the neighborhood meets the figure in {components} components")]
    DisconnectedArc { components: usize },

    #[error("point {0} is not on the boundary of the figure")]
    Boundary(String),

    #[error("point {0} is not in the interior of the neighborhood")]
    Neighborhood(String),

    #[error("invalid pull: {0}")]
    InvalidPull(String),

    #[error("pull rejected after {halvings} halvings")]
    PullFailed { halvings: u32 },

    #[error("set {index} has empty interior and cannot be part of an open realization")]
    DegenerateSet { index: usize },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("code does not contain the empty codeword")]
    MissingEmptyWord,

    #[error("at least 3 halfplanes per set are required, got {0}")]
    InvalidHalfplaneCount(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("solver error: {0}")]
    Solver(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
