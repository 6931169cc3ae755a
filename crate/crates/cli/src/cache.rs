//! On-disk cache of catalog reports keyed by a content hash.

use crate::report::{Report, SCHEMA_VERSION};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    report: Report,
}

/// Hash of everything the cached report depends on: the space, the code
/// version, the schema version and the request parameters.
pub fn cache_key(space: &str, request: &str) -> String {
    let mut h = Sha256::new();
    h.update(format!(
        "space={space}\nversion={}\nschema={SCHEMA_VERSION}\nrequest={request}\n",
        env!("CARGO_PKG_VERSION")
    ));
    hex::encode(h.finalize())
}

fn path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

/// The cached report for `key`, if present and stored under that key.
pub fn load(dir: &Path, key: &str) -> Option<Report> {
    let text = std::fs::read_to_string(path(dir, key)).ok()?;
    let entry: Entry = serde_json::from_str(&text).ok()?;
    (entry.key == key && entry.report.schema_version == SCHEMA_VERSION).then_some(entry.report)
}

/// Writes `report` under `key`, creating the directory when needed.
pub fn store(dir: &Path, key: &str, report: &Report) -> anyhow::Result<()> {
    std::fs::create_dir_all(dir)?;
    let entry = Entry { key: key.to_string(), report: report.clone() };
    let tmp = dir.join(format!("{key}.tmp"));
    std::fs::write(&tmp, serde_json::to_string(&entry)?)?;
    std::fs::rename(tmp, path(dir, key))?;
    Ok(())
}
