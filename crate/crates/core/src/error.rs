use std::path::PathBuf;

/// Errors raised by the toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    /// A non-finite cell value appeared during time marching.
    #[error("non-finite value in cell {cell} at t = {time}")]
    NumericalBlowup { cell: usize, time: f64 },

    /// Picard iteration did not reach the requested tolerance.
    #[error("fixed-point iteration did not converge after {} iterations (last residual {:e})", residuals.len(), residuals.last().copied().unwrap_or(f64::NAN))]
    NotConverged { residuals: Vec<f64> },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Reclassifies an invalid-argument error as a configuration error.
    pub(crate) fn into_config(self) -> Self {
        match self {
            Error::InvalidArgument(m) => Error::InvalidConfiguration(m),
            other => other,
        }
    }

    /// True for errors caused by bad input rather than by a failed run.
    pub fn is_configuration(&self) -> bool {
        matches!(
            self,
            Error::InvalidArgument(_) | Error::InvalidConfiguration(_) | Error::Parse { .. }
        )
    }
}

macro_rules! invalid_arg {
    ($($arg:tt)*) => { $crate::error::Error::InvalidArgument(format!($($arg)*)) };
}

macro_rules! invalid_config {
    ($($arg:tt)*) => { $crate::error::Error::InvalidConfiguration(format!($($arg)*)) };
}

pub(crate) use invalid_arg;
pub(crate) use invalid_config;
