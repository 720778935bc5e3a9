use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Arguments or graph data that violate an operation's preconditions.
    #[error("invalid input: {0}")]
    Input(String),

    /// Malformed text in one of the interchange formats.
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// An exact oracle was asked to run beyond its tractable size.
    #[error("{what} oracle supports at most {limit} vertices, got {n}")]
    Limit {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    /// No band of the slack partition produced a verifiable certificate.
    #[error("no bulging band verified (alpha={alpha}, beta={beta}, s={s})")]
    NoCertificate { alpha: f64, beta: f64, s: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
