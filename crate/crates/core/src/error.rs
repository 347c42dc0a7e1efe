use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("multiplication table is not associative at ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("group order {order} exceeds the size bound {bound}")]
    TooLarge { order: usize, bound: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("map is not well defined: {0}")]
    NotWellDefined(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("sigma^{0} is not the identity")]
    SigmaOrder(u64),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("level {0} lies outside the truncation")]
    OutsideTruncation(u64),
    #[error("{0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Errors caused by malformed input rather than violated preconditions.
    pub fn is_malformed_input(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
