//! The JSON run-report document shared by every subcommand.

use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, Result};

/// Version tag written into every report.
pub const SCHEMA: &str = "polconv.run-report/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    /// Command line that produced the report.
    pub command: Vec<String>,
    pub config: Value,
    pub results: Value,
    pub duration_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl RunReport {
    pub fn new(
        command: &[String],
        config: &impl Serialize,
        results: &impl Serialize,
        started: Instant,
        seed: Option<u64>,
    ) -> Result<Self> {
        Ok(Self {
            schema: SCHEMA.into(),
            command: command.to_vec(),
            config: serde_json::to_value(config)?,
            results: serde_json::to_value(results)?,
            duration_ms: started.elapsed().as_secs_f64() * 1e3,
            seed,
        })
    }

    pub fn write(&self, out: &mut dyn Write) -> Result<()> {
        serde_json::to_writer_pretty(&mut *out, self)?;
        writeln!(out).map_err(CliError::Stdout)
    }
}
