use std::path::PathBuf;

/// Errors surfaced by the command-line front end.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] polconv_core::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("writing output: {0}")]
    Stdout(#[source] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Exit status for configuration problems (bad flags, unknown names, paths).
pub const EXIT_CONFIG: i32 = 2;
/// Exit status for a conversion or scenario that missed its target.
pub const EXIT_VERIFICATION: i32 = 3;

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        use polconv_core::Error as E;
        match self {
            CliError::Core(E::ConversionImpossible { .. } | E::ScenarioFailed { .. }) => EXIT_VERIFICATION,
            CliError::Config(_) | CliError::Core(_) | CliError::Io { .. } => EXIT_CONFIG,
            CliError::Stdout(_) | CliError::Csv(_) | CliError::Json(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
