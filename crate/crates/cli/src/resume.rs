use std::fs;
use std::path::{Path, PathBuf};

use polyuniv::universality::{CoveredEntry, SweepCheckpoint};
use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;
use crate::error::CliError;

pub const RESUME_FORMAT: &str = "polyuniv-resume/1";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Covered {
    pub ell: usize,
    pub position: u64,
    pub t0_index: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResumeFile {
    pub format: String,
    pub config: ExperimentConfig,
    pub config_hash: String,
    pub seed: u64,
    /// Next sweep position.
    pub position: u64,
    pub covered: Vec<Covered>,
    pub complete: bool,
    pub out_dir: PathBuf,
    pub name: String,
}

impl ResumeFile {
    pub fn new(config: &ExperimentConfig, cp: &SweepCheckpoint, complete: bool, out_dir: &Path, name: &str) -> Self {
        ResumeFile {
            format: RESUME_FORMAT.into(),
            config: config.clone(),
            config_hash: config.hash(),
            seed: config.seed,
            position: cp.position,
            covered: cp
                .covered
                .iter()
                .map(|c| Covered {
                    ell: c.ell,
                    position: c.position,
                    t0_index: c.t0_index,
                })
                .collect(),
            complete,
            out_dir: out_dir.to_path_buf(),
            name: name.to_string(),
        }
    }

    pub fn checkpoint(&self) -> SweepCheckpoint {
        SweepCheckpoint {
            position: self.position,
            covered: self
                .covered
                .iter()
                .map(|c| CoveredEntry {
                    ell: c.ell,
                    position: c.position,
                    t0_index: c.t0_index,
                })
                .collect(),
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
        let file: ResumeFile = serde_json::from_str(&text).map_err(|e| CliError::Resume {
            path: path.display().to_string(),
            message: format!("line {} column {}: {e}", e.line(), e.column()),
        })?;
        if file.format != RESUME_FORMAT {
            return Err(CliError::Resume {
                path: path.display().to_string(),
                message: format!("unsupported format {:?}", file.format),
            });
        }
        Ok(file)
    }

    /// Atomic replace so an interrupted write never leaves a torn file.
    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        let tmp = path.with_extension("tmp");
        let text = serde_json::to_string_pretty(self).expect("resume file serializes");
        fs::write(&tmp, text).map_err(|e| CliError::io(tmp.display().to_string(), e))?;
        fs::rename(&tmp, path).map_err(|e| CliError::io(path.display().to_string(), e))
    }

    /// The stored config, with its seed replaced when one is given, must
    /// still hash to the recorded value.
    pub fn validated_config(&self, seed_override: Option<u64>) -> Result<ExperimentConfig, CliError> {
        let mut config = self.config.clone();
        if let Some(seed) = seed_override {
            config.seed = seed;
        }
        let found = config.hash();
        if found != self.config_hash || config.seed != self.seed {
            return Err(CliError::ConfigHashMismatch {
                expected: self.config_hash.clone(),
                found,
            });
        }
        Ok(config)
    }
}
