use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The operation is not defined for this class of form (square
    /// discriminant, zero form, wrong sign).
    #[error("unsupported form {form}: {reason}")]
    UnsupportedClass { form: String, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A computed object failed one of its own consistency checks.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn unsupported(form: impl ToString, reason: impl Into<String>) -> Self {
        Error::UnsupportedClass {
            form: form.to_string(),
            reason: reason.into(),
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
