//! `manifest.json`, written next to every set of CSV files.

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use evobandit_core::ExperimentConfig;
use serde::Serialize;

use crate::CliResult;

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub master_seed: u64,
    pub n_trials: usize,
    /// Seconds since the Unix epoch when the outputs were written.
    pub timestamp: u64,
    /// Every experiment that contributed to the outputs, fully resolved.
    pub experiments: Vec<ExperimentConfig>,
    /// Config text that regenerates these outputs when passed to `--config`.
    pub config: String,
    pub outputs: Vec<PathBuf>,
}

impl RunManifest {
    pub fn new(
        command: &str,
        master_seed: u64,
        n_trials: usize,
        experiments: Vec<ExperimentConfig>,
        config: String,
    ) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            master_seed,
            n_trials,
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
            experiments,
            config,
            outputs: Vec::new(),
        }
    }

    pub fn write(&self, dir: &Path) -> CliResult<PathBuf> {
        let path = dir.join("manifest.json");
        let json = serde_json::to_string_pretty(self).expect("manifest is plain data");
        std::fs::write(&path, json + "\n")?;
        Ok(path)
    }
}
