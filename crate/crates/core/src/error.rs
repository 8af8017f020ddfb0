use thiserror::Error;

use crate::qsym::Basis;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree-zero composition has no subset representative")]
    DegreeZero,

    #[error("composition parts must be positive, found 0 at index {0}")]
    ZeroPart(usize),

    #[error("subset element {element} out of range [1, {max}]")]
    SubsetOutOfRange { element: usize, max: usize },

    #[error("subset elements must be strictly increasing")]
    SubsetNotIncreasing,

    #[error("compositions have unequal degrees {0} and {1}")]
    DegreeMismatch(usize, usize),

    #[error("3^({i}) requires 2 <= i <= n-1 with n = {n}")]
    ThreeIndexOutOfRange { n: usize, i: usize },

    #[error("wedge over an empty index set")]
    EmptyWedge,

    #[error("basis mismatch: {0} vs {1}")]
    BasisMismatch(Basis, Basis),

    #[error("convert via theta module")]
    ThetaConversion,

    #[error("input not quasi-symmetric in {0} variables")]
    NotQuasiSymmetric(usize),

    #[error("need at least {needed} variables, got {got}")]
    TooFewVariables { needed: usize, got: usize },

    #[error("θ^BH defined for sqs-functions; [{0}] is not sqs")]
    NotSqs(String),
    /// θ-combinations in Ξ only take sqs indices.
    #[error("[{0}] is not an sqs composition")]
    NotSqsIndex(String),

    #[error("position {j} of [{alpha}] is not an internal peak")]
    NotInternalPeak { alpha: String, j: usize },

    #[error("element not in subspace")]
    NotInSubspace,

    #[error("element is not homogeneous")]
    NotHomogeneous,

    #[error("degree must be at least 1")]
    ZeroDegreeRank,

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
