use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid --{field}: {message}")]
    Config { field: String, message: String },
    #[error("resume file {path}: {message}")]
    Resume { path: String, message: String },
    #[error("config hash mismatch: resume file has {expected}, current config gives {found}")]
    ConfigHashMismatch { expected: String, found: String },
    #[error(transparent)]
    Core(#[from] polyuniv::Error),
    #[error("{context}: {source}")]
    Io {
        context: String,
        source: std::io::Error,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn config(field: &str, message: impl Into<String>) -> Self {
        CliError::Config {
            field: field.to_string(),
            message: message.into(),
        }
    }

    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }
}
