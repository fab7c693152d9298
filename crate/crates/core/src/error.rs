use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed model, parameters or raw input.
    #[error("invalid input: {0}")]
    Input(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("clause is not linear recursive: {0}")]
    NotLinearRecursive(String),

    #[error("literal {literal} of `{clause}` has {extensions} extensions under a determinate evaluation")]
    Determinacy {
        clause: String,
        literal: usize,
        extensions: usize,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn input(message: impl Into<String>) -> Self {
        Error::Input(message.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
