//! The run manifest: what was processed, with what configuration, and how
//! each image fared. Wall-clock timings live here (and only here; the CSV
//! reports stay byte-deterministic).

use std::path::Path;

use sdi_core::{Band, PipelineConfig};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub inputs: Vec<String>,
    pub config: PipelineConfig,
    pub results: Vec<ImageResult>,
    pub total_ms: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ImageResult {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub message: Option<String>,
    pub runtime_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub band_selected: Option<Band>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

impl RunManifest {
    pub fn write(&self, path: &Path) -> anyhow::Result<()> {
        let json = serde_json::to_string_pretty(self)?;
        std::fs::write(path, json)?;
        Ok(())
    }

    pub fn read(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Band recorded for an image id, if the run segmented it successfully.
    pub fn band_for(&self, id: &str) -> Option<Band> {
        self.results
            .iter()
            .find(|r| r.id == id)
            .and_then(|r| r.band_selected)
    }
}
