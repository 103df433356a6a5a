use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },

    #[error("unknown parameter key `{0}`")]
    UnknownKey(String),

    #[error("unknown preset `{0}` (expected SP, HH1 or TG)")]
    UnknownPreset(String),

    #[error("config line {line}: {reason}")]
    Config { line: usize, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-finite {quantity} at step {step}")]
    NonFinite { step: u64, quantity: &'static str },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(name: &str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name: name.to_string(),
            reason: reason.into(),
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
