use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A table or file does not describe a total operation on its carrier.
    #[error("malformed structure: {0}")]
    Structure(String),

    #[error("{what} of size {size} exceeds the cap of {cap}")]
    SizeCap {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("subset is not a multiplicative ideal: {product} = {left} * {right} leaves the subset")]
    NotIdeal {
        left: String,
        right: String,
        product: String,
    },

    #[error("subset is not an order filter: {lower} <= {upper} but {upper} is outside the subset")]
    NotFilter { lower: String, upper: String },

    #[error("collapsing the subset is not a congruence: {0}")]
    NotCongruence(String),

    #[error("parse error at line {line}, offset {offset}: {message}")]
    Parse {
        line: usize,
        offset: usize,
        message: String,
    },

    #[error("variable {0} has no assigned value")]
    UnassignedVariable(String),

    #[error("unknown element name {0:?}")]
    UnknownElement(String),
}

impl Error {
    pub(crate) fn structure(msg: impl Into<String>) -> Self {
        Error::Structure(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn parse(line: usize, offset: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            offset,
            message: msg.into(),
        }
    }
}
