//! On-disk result cache keyed by a SHA-256 digest of the operation and its
//! inputs. Each entry stores a digest of its own payload; an entry whose
//! payload no longer matches is treated as a miss and rewritten.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{Algebra, FiniteSemiring, Morphism};
use crate::error::{Error, Result};
use crate::finder::{enumerate_models, SearchSpec};
use crate::io;

pub const CACHE_ENV: &str = "SRW_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".srw-cache";

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn cache_key(operation: &str, inputs: &str) -> String {
    let mut h = Sha256::new();
    h.update(operation.as_bytes());
    h.update([0u8]);
    h.update(inputs.as_bytes());
    hex::encode(h.finalize())
}

#[derive(Serialize, Deserialize)]
struct Entry {
    operation: String,
    key: String,
    digest: String,
    payload: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit,
    Miss,
    /// An entry existed but failed its digest check.
    Corrupt,
    Disabled,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache {
            dir: Some(dir.into()),
        }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    /// `$SRW_CACHE_DIR`, else `.srw-cache` in the working directory.
    pub fn from_env() -> Self {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => Cache::at(d),
            _ => Cache::at(DEFAULT_CACHE_DIR),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    pub fn get(&self, operation: &str, inputs: &str) -> (Option<String>, Lookup) {
        let key = cache_key(operation, inputs);
        let Some(path) = self.path(&key) else {
            return (None, Lookup::Disabled);
        };
        let Ok(text) = fs::read_to_string(&path) else {
            return (None, Lookup::Miss);
        };
        match serde_json::from_str::<Entry>(&text) {
            Ok(e) if e.key == key && e.digest == sha256_hex(e.payload.as_bytes()) => {
                (Some(e.payload), Lookup::Hit)
            }
            _ => (None, Lookup::Corrupt),
        }
    }

    pub fn put(&self, operation: &str, inputs: &str, payload: &str) -> Result<()> {
        let key = cache_key(operation, inputs);
        let Some(path) = self.path(&key) else {
            return Ok(());
        };
        fs::create_dir_all(path.parent().expect("entry lives in the cache dir"))?;
        let entry = Entry {
            operation: operation.to_string(),
            key,
            digest: sha256_hex(payload.as_bytes()),
            payload: payload.to_string(),
        };
        // write then rename so readers never see half an entry
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_string(&entry)?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    pub fn get_or_compute(
        &self,
        operation: &str,
        inputs: &str,
        compute: impl FnOnce() -> Result<String>,
    ) -> Result<(String, Lookup)> {
        let (found, lookup) = self.get(operation, inputs);
        if let Some(payload) = found {
            return Ok((payload, lookup));
        }
        let payload = compute()?;
        self.put(operation, inputs, &payload)?;
        Ok((payload, lookup))
    }
}

/// [`enumerate_models`] through the cache. Hits are re-validated on load.
pub fn cached_models(
    cache: &Cache,
    spec: &SearchSpec,
    jobs: usize,
) -> Result<(Vec<FiniteSemiring>, Lookup)> {
    let (payload, lookup) = cache.get_or_compute("enumerate_models", &spec.canonical_text(), || {
        let models = enumerate_models(spec, jobs)?;
        let values: Vec<_> = models
            .into_iter()
            .map(|m| io::to_value(&Algebra::Semiring(m)))
            .collect();
        Ok(serde_json::to_string(&values)?)
    })?;
    let values: Vec<serde_json::Value> = serde_json::from_str(&payload)?;
    let models = values
        .into_iter()
        .map(|v| match io::from_value(v)? {
            Algebra::Semiring(s) => Ok(s),
            other => Err(Error::KindMismatch(format!("cached {} model", other.kind()))),
        })
        .collect::<Result<_>>()?;
    Ok((models, lookup))
}

/// [`Algebra::isomorphism_to`] through the cache. A cached map is re-checked
/// against both tables before it is returned.
pub fn cached_isomorphism(
    cache: &Cache,
    a: &Algebra,
    b: &Algebra,
) -> Result<(Option<Morphism>, Lookup)> {
    let inputs = format!("{}\n{}", io::to_json(a), io::to_json(b));
    let (payload, lookup) = cache.get_or_compute("is_isomorphic", &inputs, || {
        let map = a.isomorphism_to(b)?.map(|m| m.map);
        Ok(serde_json::to_string(&map)?)
    })?;
    let map: Option<Vec<usize>> = serde_json::from_str(&payload)?;
    let Some(map) = map else {
        return Ok((None, lookup));
    };
    let m = Morphism::check(a, b, map)?;
    if !m.is_isomorphism() {
        return Err(Error::Invalid("cached map is not an isomorphism".into()));
    }
    Ok((Some(m), lookup))
}
