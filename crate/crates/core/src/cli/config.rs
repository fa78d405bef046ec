use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::CliError;

/// Optional JSON defaults; keys are the long flag names.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub omega0: Option<f64>,
    pub omega1: Option<f64>,
    pub tau: Option<f64>,
    pub t: Option<f64>,
    pub lambda: Option<f64>,
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub count: Option<usize>,
    #[serde(alias = "secondary_start")]
    pub secondary_start: Option<f64>,
    #[serde(alias = "secondary_stop")]
    pub secondary_stop: Option<f64>,
    #[serde(alias = "secondary_count")]
    pub secondary_count: Option<usize>,
    pub out: Option<PathBuf>,
    pub svg: Option<bool>,
    pub n: Option<usize>,
    pub seed: Option<u64>,
    #[serde(alias = "fock_n")]
    pub fock_n: Option<usize>,
    pub json: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }
}
