//! On-disk cache of class registries and Hall tables, keyed by a content hash.

use std::fs;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use hallforge::repcat::{Category, CategorySnapshot};

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache invalid: {0}")]
    CacheInvalid(String),
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
}

/// `sha256(canonical quiver JSON, q, t)` in hex.
pub fn cache_key(canonical_quiver: &str, q: u32, t: i64) -> String {
    let mut h = Sha256::new();
    h.update(canonical_quiver.as_bytes());
    h.update(format!("\nq={q}\nt={t}\n").as_bytes());
    hex::encode(h.finalize())
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    key: String,
    quiver: String,
    q: u32,
    t: i64,
    snapshot: CategorySnapshot,
}

pub struct Cache {
    dir: PathBuf,
    key: String,
    quiver: String,
    q: u32,
    t: i64,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>, canonical_quiver: &str, q: u32, t: i64) -> Self {
        Cache {
            dir: dir.into(),
            key: cache_key(canonical_quiver, q, t),
            quiver: canonical_quiver.to_string(),
            q,
            t,
        }
    }

    pub fn path(&self) -> PathBuf {
        self.dir.join(format!("{}.json", self.key))
    }

    /// Loads the entry into `cat`. `Ok(false)` when there is nothing stored yet.
    pub fn load(&self, cat: &Category) -> Result<bool, CacheError> {
        let path = self.path();
        if !path.exists() {
            return Ok(false);
        }
        let text = fs::read_to_string(&path)?;
        let file: CacheFile = serde_json::from_str(&text).map_err(|e| CacheError::CacheInvalid(e.to_string()))?;
        if file.key != self.key || file.quiver != self.quiver || file.q != self.q || file.t != self.t {
            return Err(CacheError::CacheInvalid(
                "entry was written for a different configuration".into(),
            ));
        }
        cat.restore(&file.snapshot)
            .map_err(|e| CacheError::CacheInvalid(e.to_string()))?;
        Ok(true)
    }

    /// Writes the entry through a temporary file and an atomic rename, so concurrent writers of
    /// the same key leave one complete file behind.
    pub fn store(&self, cat: &Category) -> Result<(), CacheError> {
        fs::create_dir_all(&self.dir)?;
        let file = CacheFile {
            key: self.key.clone(),
            quiver: self.quiver.clone(),
            q: self.q,
            t: self.t,
            snapshot: cat.snapshot(),
        };
        let text = serde_json::to_string(&file).map_err(|e| CacheError::CacheInvalid(e.to_string()))?;
        let nanos = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_nanos())
            .unwrap_or(0);
        let tmp = self
            .dir
            .join(format!("{}.{}.{nanos}.tmp", self.key, std::process::id()));
        fs::write(&tmp, text)?;
        fs::rename(&tmp, self.path())?;
        Ok(())
    }
}

pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os("HALLFORGE_CACHE")
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}
