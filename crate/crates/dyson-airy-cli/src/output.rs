use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// Version tag written into every JSON document.
pub const SCHEMA_VERSION: u32 = 1;

/// Collects the files a run writes under one directory and stem.
pub struct Sink {
    dir: PathBuf,
    stem: String,
    written: Vec<PathBuf>,
}

impl Sink {
    pub fn new(dir: &Path, stem: &str) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        Ok(Self { dir: dir.to_path_buf(), stem: stem.to_string(), written: Vec::new() })
    }

    fn path(&self, ext: &str) -> PathBuf {
        self.dir.join(format!("{}.{ext}", self.stem))
    }

    /// Header row plus one row per record. Cells are preformatted, see [`float`].
    pub fn csv<R: IntoIterator<Item = Vec<String>>>(&mut self, header: &[&str], rows: R) -> Result<PathBuf, CliError> {
        let path = self.path("csv");
        let mut w = csv::Writer::from_path(&path).map_err(|e| csv_io(&path, e))?;
        w.write_record(header).map_err(|e| csv_io(&path, e))?;
        for row in rows {
            w.write_record(&row).map_err(|e| csv_io(&path, e))?;
        }
        w.flush().map_err(|e| CliError::io(&path, e))?;
        self.written.push(path.clone());
        Ok(path)
    }

    /// `{"schema": .., "kind": stem, ..body}` as pretty JSON.
    pub fn json(&mut self, body: Value) -> Result<PathBuf, CliError> {
        let path = self.path("json");
        let mut doc = json!({ "schema": SCHEMA_VERSION, "kind": self.stem });
        if let (Some(d), Value::Object(b)) = (doc.as_object_mut(), body) {
            d.extend(b);
        }
        write_json(&path, &doc)?;
        self.written.push(path.clone());
        Ok(path)
    }

    pub fn manifest_path(&self) -> PathBuf {
        self.path("manifest.json")
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }
}

fn csv_io(path: &Path, e: csv::Error) -> CliError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::io(path, io),
        other => CliError::io(path, std::io::Error::other(format!("{other:?}"))),
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("plain data serializes");
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Shortest round-trip decimal; exponent form outside [1e-4, 1e15).
pub fn float(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) || !a.is_finite() {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

/// sha256 of the compact JSON of `inputs`. Object keys are sorted by
/// serde_json's default map, so equal inputs hash equally everywhere.
pub fn input_hash(inputs: &Value) -> String {
    let digest = Sha256::digest(serde_json::to_vec(inputs).expect("plain data serializes"));
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub schema: u32,
    pub command: Vec<String>,
    pub config_hash: String,
    pub seed: Option<u64>,
    pub version: &'static str,
    pub wall_seconds: f64,
    pub workers: usize,
    pub outputs: Vec<String>,
    /// One-line error when the run failed.
    pub error: Option<String>,
}
