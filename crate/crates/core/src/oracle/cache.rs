//! On-disk cache of permutation quotients, one JSON file per presentation
//! digest. A changed presentation has a different digest, so stale entries are
//! never read.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::quotient::{find_quotients, FiniteQuotient};
use crate::error::{Error, Result};
use crate::presentation::Presentation;

/// Overrides the cache directory.
pub const CACHE_DIR_ENV: &str = "TTK_CACHE_DIR";

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    digest: String,
    max_degree: usize,
    quotients: Vec<FiniteQuotient>,
}

#[derive(Debug, Clone)]
pub struct QuotientCache {
    dir: PathBuf,
}

impl QuotientCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        QuotientCache { dir: dir.into() }
    }

    /// `$TTK_CACHE_DIR`, else `.ttk-cache` in the working directory.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_DIR_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(".ttk-cache"));
        QuotientCache::new(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, digest: &str) -> PathBuf {
        self.dir.join(format!("quotients-{digest}.json"))
    }

    fn read(&self, digest: &str) -> Option<Entry> {
        let text = fs::read_to_string(self.path_for(digest)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        (entry.digest == digest).then_some(entry)
    }

    fn write(&self, entry: &Entry) -> Result<()> {
        let io = |e: std::io::Error| Error::Cache(e.to_string());
        fs::create_dir_all(&self.dir).map_err(io)?;
        let target = self.path_for(&entry.digest);
        let tmp = self
            .dir
            .join(format!(".quotients-{}.{}.tmp", entry.digest, std::process::id()));
        let text = serde_json::to_string_pretty(entry).map_err(|e| Error::Cache(e.to_string()))?;
        fs::write(&tmp, text).map_err(io)?;
        fs::rename(&tmp, &target).map_err(io)
    }

    /// Cached [`find_quotients`]. Unreadable entries are recomputed.
    pub fn quotients(&self, pres: &Presentation, max_degree: usize) -> Result<Vec<FiniteQuotient>> {
        let digest = pres.digest();
        if let Some(entry) = self.read(&digest) {
            if entry.max_degree >= max_degree {
                return Ok(entry
                    .quotients
                    .into_iter()
                    .filter(|q| q.degree <= max_degree)
                    .collect());
            }
        }
        let quotients = find_quotients(pres, max_degree)?;
        self.write(&Entry {
            digest,
            max_degree,
            quotients: quotients.clone(),
        })?;
        Ok(quotients)
    }
}
