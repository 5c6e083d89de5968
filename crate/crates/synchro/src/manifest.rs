//! Run manifests: what went in, what came out, both by SHA-256.
//! No timestamps or host details, so identical inputs give identical
//! manifests.

use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Artifact {
    pub name: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub version: String,
    pub seed: u64,
    pub inputs: Vec<Artifact>,
    pub outputs: Vec<Artifact>,
}

/// Collects the files a command reads and writes.
#[derive(Debug, Default)]
pub struct Session {
    pub inputs: Vec<Artifact>,
    pub outputs: Vec<Artifact>,
}

impl Session {
    pub fn record_input(&mut self, name: &str, bytes: &[u8]) {
        let a = Artifact {
            name: name.to_string(),
            sha256: sha256_hex(bytes),
        };
        if !self.inputs.contains(&a) {
            self.inputs.push(a);
        }
    }

    pub fn read(&mut self, path: &Path) -> std::io::Result<String> {
        let text = std::fs::read_to_string(path)?;
        self.record_input(&path.display().to_string(), text.as_bytes());
        Ok(text)
    }

    pub fn write(&mut self, path: &Path, contents: &str) -> std::io::Result<()> {
        std::fs::write(path, contents)?;
        self.record_output(&path.display().to_string(), contents.as_bytes());
        Ok(())
    }

    pub fn record_output(&mut self, name: &str, bytes: &[u8]) {
        self.outputs.push(Artifact {
            name: name.to_string(),
            sha256: sha256_hex(bytes),
        });
    }

    pub fn manifest(&self, command: Vec<String>, seed: u64) -> RunManifest {
        RunManifest {
            command,
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
        }
    }
}

pub fn write_manifest(path: &PathBuf, manifest: &RunManifest) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(manifest).expect("manifest serializes");
    text.push('\n');
    std::fs::write(path, text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(sha256_hex(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }

    #[test]
    fn inputs_are_deduplicated() {
        let mut s = Session::default();
        s.record_input("a", b"x");
        s.record_input("a", b"x");
        s.record_output("stdout", b"y");
        let m = s.manifest(vec!["synchro".into()], 1);
        assert_eq!(m.inputs.len(), 1);
        assert_eq!(m.outputs.len(), 1);
    }
}
