use thiserror::Error;

use crate::cartan::Family;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank {got} is too small for family {family}: minimum is {min}")]
    RankTooSmall { family: Family, min: usize, got: usize },

    #[error("node index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("not a real root: finite part vanishes")]
    NotReal,

    #[error("not a Bruhat cover: {0}")]
    NotCover(String),

    #[error("element is not Grassmannian: {0}")]
    NotGrassmannian(String),

    #[error("invalid partition for {family}{n}: {reason}")]
    InvalidPartition { family: Family, n: usize, reason: String },

    #[error("vector is not in the coweight lattice image")]
    NotCoweight,

    #[error("strict partition required, got {0}")]
    NotStrict(String),

    #[error("index {index} out of range {lo}..={hi}")]
    OutOfRange { index: usize, lo: usize, hi: usize },

    #[error("element is not homogeneous")]
    NonHomogeneous,

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A computation contradicted a proven structural fact.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
