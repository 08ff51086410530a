//! Errors raised by the command-line layer.

use thiserror::Error;

/// A failure of a CLI invocation.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments or an unsupported combination of options.
    #[error("{0}")]
    Usage(String),
    /// Reading or writing a file failed.
    #[error("{path}: {source}")]
    Io {
        /// The file involved.
        path: String,
        /// The underlying error.
        source: std::io::Error,
    },
    /// A JSON document could not be parsed or has the wrong shape.
    #[error("invalid JSON: {0}")]
    Json(String),
    /// An error from the core library.
    #[error("{0}")]
    Core(String),
    /// Rendering failed.
    #[error(transparent)]
    Render(#[from] crate::render::RenderError),
}

impl CliError {
    /// Process exit code for this error. Every error is reported as a usage
    /// error (1); code 2 is reserved for completed checks that fail.
    pub fn exit_code(&self) -> i32 {
        1
    }
}

macro_rules! core_error {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Core(e.to_string())
            }
        })*
    };
}

core_error!(
    bsmaps_core::CatalogError,
    bsmaps_core::CircleMapError,
    bsmaps_core::ConjugacyError,
    bsmaps_core::DimensionError,
    bsmaps_core::FreeGroupError,
    bsmaps_core::SymbolicError
);

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json(e.to_string())
    }
}
