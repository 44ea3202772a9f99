//! Content-addressed result cache keyed by the SHA-256 of a canonical job manifest.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use syang_core::codec::to_canonical_string;

pub const CACHE_ENV: &str = "SYANG_CACHE_DIR";
pub const DEFAULT_DIR: &str = ".syang-cache";

/// What was asked for: command, context, canonical inputs and seed.
#[derive(Clone, Debug, PartialEq)]
pub struct JobManifest {
    pub command: String,
    pub ctx: Option<(usize, usize)>,
    pub inputs: Value,
    pub seed: u64,
}

impl JobManifest {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "ctx": self.ctx.map(|(m, n)| json!([m, n])),
            "inputs": self.inputs,
            "seed": self.seed,
        })
    }

    /// Hex SHA-256 of the canonical manifest text.
    pub fn key(&self) -> String {
        let text = to_canonical_string(&self.to_json());
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResultRecord {
    pub manifest: Value,
    pub outputs: Value,
    pub exit_code: i32,
    pub timings_ms: u128,
    pub kernel_version: String,
}

impl ResultRecord {
    fn to_json(&self, key: &str) -> Value {
        json!({
            "key": key,
            "manifest": self.manifest,
            "outputs": self.outputs,
            "exit_code": self.exit_code,
            "timings": {"compute_ms": self.timings_ms as u64},
            "kernel_version": self.kernel_version,
        })
    }

    fn from_json(v: &Value) -> Option<Self> {
        Some(ResultRecord {
            manifest: v.get("manifest")?.clone(),
            outputs: v.get("outputs")?.clone(),
            exit_code: v.get("exit_code")?.as_i64()? as i32,
            timings_ms: v.pointer("/timings/compute_ms")?.as_u64()? as u128,
            kernel_version: v.get("kernel_version")?.as_str()?.to_string(),
        })
    }
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// `$SYANG_CACHE_DIR`, else `./.syang-cache`.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_ENV).map_or_else(|| PathBuf::from(DEFAULT_DIR), PathBuf::from);
        Cache { dir }
    }

    #[cfg(test)]
    pub fn at(dir: &std::path::Path) -> Self {
        Cache { dir: dir.to_path_buf() }
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(&key[..2]).join(format!("{key}.json"))
    }

    /// A record is returned only if its manifest and kernel version match;
    /// unreadable entries count as misses.
    pub fn get(&self, manifest: &JobManifest) -> Option<ResultRecord> {
        let text = fs::read_to_string(self.path(&manifest.key())).ok()?;
        let rec = ResultRecord::from_json(&serde_json::from_str(&text).ok()?)?;
        (rec.manifest == manifest.to_json() && rec.kernel_version == syang_core::KERNEL_VERSION).then_some(rec)
    }

    /// Write to a temporary file in the target directory, then rename.
    pub fn put(&self, manifest: &JobManifest, rec: &ResultRecord) -> Result<PathBuf> {
        let key = manifest.key();
        let path = self.path(&key);
        let parent = path.parent().expect("cache entries live in a shard directory");
        fs::create_dir_all(parent).with_context(|| format!("creating cache directory {}", parent.display()))?;
        let mut tmp = tempfile::NamedTempFile::new_in(parent)?;
        tmp.write_all(to_canonical_string(&rec.to_json(&key)).as_bytes())?;
        tmp.persist(&path).with_context(|| format!("writing cache entry {}", path.display()))?;
        Ok(path)
    }
}
