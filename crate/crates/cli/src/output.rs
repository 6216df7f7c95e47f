use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const MANIFEST_NAME: &str = "manifest.json";

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// JSON number, or `null` for values JSON cannot carry.
pub fn num(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

#[derive(Debug, Serialize)]
struct FileEntry {
    name: String,
    bytes: usize,
    sha256: String,
}

#[derive(Debug, Serialize)]
struct InputEntry {
    path: String,
    sha256: String,
}

/// Tracks the inputs read and files written by one command, then records
/// them in a manifest.
pub struct Outputs {
    dir: PathBuf,
    inputs: Vec<InputEntry>,
    files: Vec<FileEntry>,
}

impl Outputs {
    pub fn new(dir: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(CliError::io(dir))?;
        Ok(Self { dir: dir.to_owned(), inputs: Vec::new(), files: Vec::new() })
    }

    pub fn read_input(&mut self, path: &Path) -> Result<Vec<u8>, CliError> {
        let bytes =
            fs::read(path).map_err(|e| CliError::Validation(format!("cannot read input {}: {e}", path.display())))?;
        self.inputs.push(InputEntry { path: path.display().to_string(), sha256: sha256_hex(&bytes) });
        Ok(bytes)
    }

    pub fn read_input_text(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = self.read_input(path)?;
        String::from_utf8(bytes).map_err(|_| CliError::Validation(format!("{} is not UTF-8 text", path.display())))
    }

    pub fn write(&mut self, name: &str, bytes: &[u8]) -> Result<(), CliError> {
        let path = self.dir.join(name);
        fs::write(&path, bytes).map_err(CliError::io(&path))?;
        self.files.push(FileEntry { name: name.to_owned(), bytes: bytes.len(), sha256: sha256_hex(bytes) });
        Ok(())
    }

    pub fn write_json(&mut self, name: &str, v: &Value) -> Result<(), CliError> {
        let mut bytes = serde_json::to_vec_pretty(v).expect("JSON values serialize");
        bytes.push(b'\n');
        self.write(name, &bytes)
    }

    /// Writes the manifest. `input_digest` covers the command, every input's
    /// content and the effective options, so it changes exactly when one of them does.
    pub fn finish(self, command: &str, options: Value, seed: Option<u64>) -> Result<(), CliError> {
        let mut h = Sha256::new();
        h.update(command.as_bytes());
        for i in &self.inputs {
            h.update([0u8]);
            h.update(i.sha256.as_bytes());
        }
        h.update([0u8]);
        h.update(options.to_string().as_bytes());
        h.update([0u8]);
        h.update(seed.map(|s| s.to_string()).unwrap_or_default().as_bytes());
        let created = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let manifest = json!({
            "tool": env!("CARGO_PKG_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
            "created_unix_s": created,
            "seed": seed,
            "options": options,
            "inputs": self.inputs,
            "input_digest": hex::encode(h.finalize()),
            "files": self.files,
        });
        let path = self.dir.join(MANIFEST_NAME);
        let mut bytes = serde_json::to_vec_pretty(&manifest).expect("JSON values serialize");
        bytes.push(b'\n');
        fs::write(&path, bytes).map_err(CliError::io(&path))
    }
}
