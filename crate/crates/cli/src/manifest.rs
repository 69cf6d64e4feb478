//! Run manifests: every command that emits data files records its inputs,
//! wall-clock time, and a checksum per artifact, so long experiments stay
//! auditable.

use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::csvio::atomic_write;
use crate::error::CliError;

#[derive(Serialize)]
pub struct RunManifest {
    pub command: String,
    pub alphabet: Option<u32>,
    pub max_n: Option<u64>,
    pub moduli: Option<u32>,
    pub window: Option<f64>,
    pub threads: Option<usize>,
    pub outputs: Vec<OutputRef>,
    pub seconds: f64,
}

#[derive(Serialize)]
pub struct OutputRef {
    pub path: String,
    pub sha256: String,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        RunManifest {
            command: command.to_string(),
            alphabet: None,
            max_n: None,
            moduli: None,
            window: None,
            threads: None,
            outputs: Vec::new(),
            seconds: 0.0,
        }
    }

    pub fn record_output(&mut self, path: &Path, contents: &[u8]) {
        self.outputs.push(OutputRef {
            path: path.display().to_string(),
            sha256: sha256_hex(contents),
        });
    }

    /// Writes the manifest next to the primary output:
    /// `mult.csv` → `mult.manifest.json`.
    pub fn write_beside(&self, primary_out: &Path) -> Result<PathBuf, CliError> {
        let path = primary_out.with_extension("manifest.json");
        let mut text = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::io(format!("encoding manifest: {e}")))?;
        text.push('\n');
        atomic_write(&path, text.as_bytes())?;
        Ok(path)
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut hex = String::with_capacity(64);
    for byte in digest {
        hex.push_str(&format!("{byte:02x}"));
    }
    hex
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checksum_matches_known_vector() {
        // sha256 of the empty string
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn manifest_json_has_the_full_key_set() {
        let mut m = RunManifest::new("enumerate");
        m.alphabet = Some(5);
        m.max_n = Some(100);
        m.threads = Some(2);
        m.record_output(Path::new("mult.csv"), b"n,mult,ball\n");
        let value: serde_json::Value =
            serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        for key in ["command", "alphabet", "max_n", "moduli", "window", "threads", "outputs", "seconds"] {
            assert!(value.get(key).is_some(), "missing {key}");
        }
        assert!(value["moduli"].is_null());
        assert_eq!(value["outputs"][0]["path"], "mult.csv");
        assert_eq!(value["outputs"][0]["sha256"].as_str().unwrap().len(), 64);
    }
}
