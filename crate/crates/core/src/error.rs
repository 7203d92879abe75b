use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WalkError {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("lattice configurations differ")]
    ConfigMismatch,

    #[error("unsupported input: {0}")]
    UnsupportedInput(String),
}

pub type Result<T> = std::result::Result<T, WalkError>;

pub(crate) fn arg_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(WalkError::Argument(msg.into()))
}
