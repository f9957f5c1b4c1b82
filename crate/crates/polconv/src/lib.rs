//! Command-line front end and file formats for [`polconv_core`].

pub mod angle;
pub mod cli;
pub mod error;
pub mod report;
pub mod sweep;

pub use cli::{run, Cli, Status};
pub use error::{CliError, EXIT_CONFIG, EXIT_VERIFICATION};
pub use report::{RunReport, SCHEMA};
