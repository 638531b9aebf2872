use thiserror::Error;

use crate::multiindex::MultiIndex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("axis {axis} is out of range for dimension {dim}")]
    InvalidAxis { axis: usize, dim: usize },

    #[error("index {0} already lies in the lower set")]
    IndexInLowerSet(MultiIndex),

    #[error("evaluation matrix is rank deficient; supply different points")]
    SingularSystem,

    #[error("values are not realizable over the allowed support")]
    Inconsistent,

    #[error(
        "sequence element {index} is not supported in the lower set (offending index {witness})"
    )]
    SequenceNotInSpace { index: usize, witness: MultiIndex },

    #[error("target exponent {0} belongs to the exponent set")]
    TargetInSet(u32),

    #[error("least-squares system is rank deficient at working precision")]
    RankDeficient,

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
