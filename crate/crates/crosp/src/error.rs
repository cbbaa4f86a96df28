use std::path::PathBuf;

/// Everything the front end can fail with.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] crosp_core::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {message}", path.display())]
    Format { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const VERIFICATION_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const NUMERIC: i32 = 3;
}

impl Error {
    /// Bad input is a usage error; anything the numerics refuse is a numeric one.
    pub fn exit_code(&self) -> i32 {
        use crosp_core::Error as C;
        match self {
            Error::Io { .. } | Error::Format { .. } | Error::Usage(_) => exit::USAGE,
            Error::Core(C::Usage(_) | C::InvalidPoint(_) | C::UnsupportedSpace(_)) => exit::USAGE,
            Error::Core(_) => exit::NUMERIC,
        }
    }
}
