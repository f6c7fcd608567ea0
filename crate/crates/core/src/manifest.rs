//! Provenance records written next to every output.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: String,
    /// Every option after parsing, defaults included.
    pub flags: serde_json::Value,
    pub seed: u64,
    pub inputs: Vec<InputDigest>,
    /// Left out of reports printed to stdout so they stay byte-identical
    /// between runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_seconds: Option<f64>,
}

impl RunManifest {
    pub fn new(subcommand: &str, seed: u64) -> Self {
        Self {
            tool: "gmec",
            version: TOOL_VERSION,
            subcommand: subcommand.to_string(),
            flags: serde_json::Value::Null,
            seed,
            inputs: Vec::new(),
            duration_seconds: None,
        }
    }

    pub fn add_input(&mut self, path: &Path) -> Result<()> {
        let bytes = fs::read(path).map_err(|source| Error::File {
            path: path.display().to_string(),
            source,
        })?;
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: sha256_hex(&bytes),
        });
        Ok(())
    }

    pub fn without_duration(&self) -> Self {
        Self {
            duration_seconds: None,
            ..self.clone()
        }
    }

    /// Writes `<out>.manifest.json` and returns its path.
    pub fn write_beside(&self, out: &Path) -> Result<PathBuf> {
        let path = sidecar_path(out);
        fs::write(&path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(path)
    }
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
