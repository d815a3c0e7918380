//! Append-only JSONL cache of classification reports.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Bumped whenever the report layout or any decision procedure changes.
pub const CACHE_VERSION: &str = concat!("ringlab-report-1/", env!("CARGO_PKG_VERSION"));

const FILE_NAME: &str = "reports.jsonl";

#[derive(Debug, Serialize, Deserialize)]
struct CacheEntry {
    version: String,
    key: String,
    value: Value,
}

pub struct Cache {
    path: PathBuf,
}

impl Cache {
    pub fn new(dir: &Path) -> Self {
        Cache {
            path: dir.join(FILE_NAME),
        }
    }

    /// Latest entry for `key` with the current version; unreadable files and
    /// malformed lines are ignored.
    pub fn get(&self, key: &str) -> Option<Value> {
        let text = fs::read_to_string(&self.path).ok()?;
        text.lines()
            .rev()
            .filter_map(|line| serde_json::from_str::<CacheEntry>(line).ok())
            .find(|e| e.version == CACHE_VERSION && e.key == key)
            .map(|e| e.value)
    }

    /// Appends one entry as a single write. Failures are reported, not fatal.
    pub fn put(&self, key: &str, value: &Value) -> std::io::Result<()> {
        if let Some(dir) = self.path.parent() {
            fs::create_dir_all(dir)?;
        }
        let entry = CacheEntry {
            version: CACHE_VERSION.into(),
            key: key.into(),
            value: value.clone(),
        };
        let mut line = serde_json::to_string(&entry).expect("serializable");
        line.push('\n');
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        f.write_all(line.as_bytes())
    }
}
