use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The request would exceed the integer width or a configured size guard.
    #[error("too large: {0}")]
    TooLarge(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    /// Indices of edges that carry no label.
    #[error("missing labels on edges {0:?}")]
    MissingLabels(Vec<usize>),

    #[error("row at depth {depth} has {distinct} distinct colors")]
    IrregularRow { depth: u32, distinct: usize },

    /// A constructed object failed its own post-condition check.
    #[error("certification failed: {0}")]
    Certification(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn too_large(msg: impl Into<String>) -> Self {
        Error::TooLarge(msg.into())
    }
}
