use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid group order {0}: must be at least 1")]
    InvalidOrder(i64),

    #[error("parse error at `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("elements belong to different groups")]
    GroupMismatch,

    #[error("exponent p = {p} not allowed here: {reason}")]
    InvalidExponent { p: f64, reason: &'static str },

    #[error("operation requires a group of order at least {min}, got {order}")]
    GroupTooSmall { order: usize, min: usize },

    #[error("element is not in the augmentation ideal (|sum| = {residual:e})")]
    NotInIdeal { residual: f64 },

    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("size guard exceeded: {0}")]
    Guard(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub(crate) fn parse(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            reason: reason.into(),
        }
    }

    /// Whether the error comes from a numerical guard rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Numerical(_) | Error::Guard(_))
    }
}
