//! Content-addressed cache of seed sets and mutation classes.

use std::fs;
use std::path::{Path, PathBuf};

use gvfan_core::canon::{canonical_form, canonical_order};
use gvfan_core::ExchangeMatrix;
use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::io::write_atomic;

/// Key of an artifact computed from `b` with the given parameters. The
/// relabeling onto the canonical form is part of the key, since seeds and
/// witnesses are reported on the input labels.
pub fn cache_key(kind: &str, b: &ExchangeMatrix, params: &str) -> String {
    let mut h = Sha256::new();
    for part in [
        "gvfan-cache",
        env!("CARGO_PKG_VERSION"),
        kind,
        &serde_json::to_string(&canonical_form(b)).expect("matrix serializes"),
        &serde_json::to_string(&canonical_order(b)).expect("order serializes"),
        params,
    ] {
        h.update(part.as_bytes());
        h.update([0u8]);
    }
    hex::encode(h.finalize())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Disabled,
    Miss,
    Hit,
    Verified,
}

pub struct Cache {
    dir: Option<PathBuf>,
    verify: bool,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>, verify: bool) -> Self {
        Cache { dir, verify }
    }

    fn path(dir: &Path, key: &str) -> PathBuf {
        dir.join(format!("{key}.json"))
    }

    /// Cached value for `key`, computing and storing it on a miss.
    pub fn get_or_compute<T, F>(&self, key: &str, compute: F) -> Result<(T, CacheStatus), CliError>
    where
        T: Serialize + DeserializeOwned,
        F: Fn() -> Result<T, CliError>,
    {
        let Some(dir) = &self.dir else {
            return Ok((compute()?, CacheStatus::Disabled));
        };
        let path = Self::path(dir, key);
        if let Ok(bytes) = fs::read(&path) {
            let value: T = serde_json::from_slice(&bytes)
                .map_err(|e| CliError::Domain(format!("corrupt cache entry {}: {e}", path.display())))?;
            if !self.verify {
                return Ok((value, CacheStatus::Hit));
            }
            let fresh = serde_json::to_vec(&compute()?).expect("value serializes");
            if fresh != bytes {
                return Err(CliError::Domain(format!("cache entry {} differs from recomputation", path.display())));
            }
            return Ok((value, CacheStatus::Verified));
        }
        let value = compute()?;
        fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        write_atomic(&path, &serde_json::to_vec(&value).expect("value serializes"))?;
        Ok((value, CacheStatus::Miss))
    }
}
