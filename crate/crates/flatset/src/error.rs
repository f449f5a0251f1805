use std::path::Path;

/// Everything that ends a run before a report is written. All of these map
/// to exit status 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid `{field}`: {message}")]
    Invalid { field: String, message: String },
    #[error("{path}:{line}:{column}: {message}")]
    Input { path: String, line: usize, column: usize, message: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Core(flatset_core::Error),
}

impl CliError {
    pub fn invalid(field: &str, message: impl Into<String>) -> Self {
        CliError::Invalid { field: field.into(), message: message.into() }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.display().to_string(), source }
    }

    /// Malformed JSON, located by line and column.
    pub fn json(path: &Path, e: &serde_json::Error) -> Self {
        let full = e.to_string();
        let message = match full.rfind(" at line ") {
            Some(k) => full[..k].to_string(),
            None => full,
        };
        CliError::Input { path: path.display().to_string(), line: e.line(), column: e.column(), message }
    }

    /// The offending field, for errors that have one.
    pub fn field(&self) -> Option<&str> {
        match self {
            CliError::Invalid { field, .. } => Some(field),
            CliError::Core(e) => e.field(),
            _ => None,
        }
    }
}

impl From<flatset_core::Error> for CliError {
    fn from(e: flatset_core::Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;
