//! Content-addressed result cache: one JSON file per key in a flat directory.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde_json::Value;
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "TENSQ_CACHE_DIR";

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: &Path) -> io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Cache {
            dir: dir.to_path_buf(),
        })
    }

    /// Uses `TENSQ_CACHE_DIR` when set and nonempty.
    pub fn from_env() -> io::Result<Option<Self>> {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => Cache::open(Path::new(&d)).map(Some),
            _ => Ok(None),
        }
    }

    pub fn key(material: &Value) -> String {
        hex::encode(Sha256::digest(material.to_string().as_bytes()))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A missing or unreadable entry counts as a miss.
    pub fn get(&self, key: &str) -> Option<String> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str::<Value>(&text).ok()?;
        Some(text)
    }

    /// Write-then-rename so concurrent readers never see a partial file.
    pub fn put(&self, key: &str, line: &str) -> io::Result<()> {
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, line)?;
        fs::rename(tmp, self.path(key))
    }
}
