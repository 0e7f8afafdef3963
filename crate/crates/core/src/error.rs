use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AggError {
    #[error("dimension mismatch: {left}-dimensional vs {right}-dimensional input")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid box {0:?}: need at least one side and every side >= 1")]
    InvalidBox(Vec<u64>),

    #[error("invalid partition {0:?}: parts must be positive and non-increasing")]
    InvalidPartition(Vec<u64>),

    #[error("attachment parameter {param:?} is not an integer boundary point of the box with extents {extents:?}")]
    InvalidParameter { param: Vec<u64>, extents: Vec<u64> },

    #[error("direction index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("direction set must be nonempty and free of duplicates")]
    InvalidDirections,

    #[error("degree k = {k} out of range for {n} values")]
    DegreeOutOfRange { k: usize, n: usize },

    #[error(
        "coordinate {coord}: x = {x} < y = {y}; the formula needs x_i >= y_i, \
         normalize the pair first with `normalize_pair` (swap x_i and y_i)"
    )]
    NotDominating { coord: usize, x: u64, y: u64 },

    #[error("expected a {expected}-dimensional input, got {got}")]
    WrongDimension { expected: usize, got: usize },

    #[error("golden-rectangle iteration needs lambda_1 > lambda_2 + 3, got {0:?}")]
    FibonacciHypothesis(Vec<u64>),

    #[error("number of trials must be at least 1")]
    NoTrials,

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, AggError>;
