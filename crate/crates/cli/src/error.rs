use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Library(#[from] spectra_qkit::Error),

    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    /// A hard verification check did not pass.
    #[error("{0} hard check(s) failed")]
    HardFailure(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::HardFailure(_) => 1,
            CliError::Usage(_) | CliError::Library(_) | CliError::Io { .. } => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
