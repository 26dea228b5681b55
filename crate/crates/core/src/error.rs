use thiserror::Error;

use crate::Exponent;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line name `{0}` is already registered")]
    DuplicateLine(String),
    #[error("unknown line `{0}`")]
    UnknownLine(String),
    #[error("line `{0}` is already paired with another contragredient line")]
    DualConflict(String),
    #[error("search limit exceeded: {size} points, limit is {limit}")]
    LimitExceeded { size: usize, limit: usize },
    #[error("multisegment is not rigid (it meets more than one line)")]
    NotRigid,
    #[error("segment of length {len} is not transferable: length must be a multiple of {s}")]
    NotTransferable { len: u32, s: u32 },
    #[error("virtual representations live on different sides")]
    SideMismatch,
    #[error("alpha = {0} is outside the open interval (0, 1/2)")]
    AlphaOutOfRange(Exponent),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
