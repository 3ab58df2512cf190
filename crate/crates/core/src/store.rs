//! On-disk cache of command results keyed by a digest of their inputs.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::io::Write;
use std::path::{Path, PathBuf};

pub const CACHE_ENV: &str = "SCHURLAB_CACHE";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub command: String,
    pub inputs_digest: String,
    pub verdict: Value,
    pub tool_version: String,
    pub timestamp: u64,
}

/// SHA-256 of the canonical JSON of the command and its inputs.
pub fn inputs_digest(command: &str, inputs: &Value) -> String {
    let text = canonical_json(&serde_json::json!({ "command": command, "inputs": inputs }));
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Compact JSON with object keys in sorted order.
pub fn canonical_json(v: &Value) -> String {
    // serde_json maps are ordered by key unless `preserve_order` is enabled
    serde_json::to_string(v).expect("JSON values serialize")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit(ResultRecord),
    Miss,
    /// The entry exists but cannot be used.
    Corrupt(String),
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Cache> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
        Ok(Cache { dir })
    }

    /// The cache named by `SCHURLAB_CACHE`, if set and non-empty.
    pub fn from_env() -> Result<Option<Cache>> {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => Cache::new(PathBuf::from(d)).map(Some),
            _ => Ok(None),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, digest: &str) -> PathBuf {
        self.dir.join(format!("{digest}.json"))
    }

    pub fn get(&self, command: &str, digest: &str) -> Result<Lookup> {
        let path = self.path(digest);
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Lookup::Miss),
            Err(e) => return Err(Error::Io(format!("{}: {e}", path.display()))),
        };
        match serde_json::from_str::<ResultRecord>(&text) {
            Ok(r) if r.inputs_digest == digest && r.command == command => Ok(Lookup::Hit(r)),
            Ok(_) => Ok(Lookup::Corrupt(format!("{} does not match its key", path.display()))),
            Err(e) => Ok(Lookup::Corrupt(format!("{}: {e}", path.display()))),
        }
    }

    /// Writes the record to a temporary file and renames it into place.
    pub fn put(&self, record: &ResultRecord) -> Result<()> {
        let io = |e: std::io::Error| Error::Io(format!("{}: {e}", self.dir.display()));
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
        let text = serde_json::to_string(record).expect("records serialize");
        tmp.write_all(text.as_bytes()).map_err(io)?;
        tmp.as_file().sync_all().map_err(io)?;
        tmp.persist(self.path(&record.inputs_digest)).map_err(|e| io(e.error))?;
        Ok(())
    }
}

pub fn now() -> u64 {
    std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        let d = inputs_digest("ci scan", &json!({ "group": [8] }));
        assert_eq!(cache.get("ci scan", &d).unwrap(), Lookup::Miss);
        let rec = ResultRecord {
            command: "ci scan".into(),
            inputs_digest: d.clone(),
            verdict: json!({ "dci": false }),
            tool_version: "test".into(),
            timestamp: 1,
        };
        cache.put(&rec).unwrap();
        assert_eq!(cache.get("ci scan", &d).unwrap(), Lookup::Hit(rec));
        std::fs::write(dir.path().join(format!("{d}.json")), "{not json").unwrap();
        assert!(matches!(cache.get("ci scan", &d).unwrap(), Lookup::Corrupt(_)));
    }

    #[test]
    fn digests_ignore_key_order() {
        let a = inputs_digest("x", &json!({ "a": 1, "b": [1, 2] }));
        let b: Value = serde_json::from_str(r#"{"b":[1,2],"a":1}"#).unwrap();
        assert_eq!(a, inputs_digest("x", &b));
        assert_ne!(a, inputs_digest("y", &b));
    }
}
