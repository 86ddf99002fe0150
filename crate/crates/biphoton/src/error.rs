use thiserror::Error;

/// Errors produced across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("regime condition violated: {0}")]
    Regime(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the CLI for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Parameter(_) | Error::Grid(_) | Error::Io(_) => 2,
            Error::Regime(_) => 3,
            Error::Numeric(_) => 4,
        }
    }
}
