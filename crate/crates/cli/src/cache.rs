//! On-disk KL tables, one versioned JSON file per Cartan type.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use heckecat_core::{CartanType, CoxeterGroup, Element, KLCache, LaurentPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::format::q_coeffs;

pub const FORMAT_VERSION: u32 = 1;

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "HECKECAT_CACHE";

/// Number of random bar-invariance checks run on every load.
pub const VALIDATION_SAMPLES: usize = 10;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed cache file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cache format version {found}, expected {FORMAT_VERSION}")]
    Version { found: u32 },
    #[error("cache holds {found}, expected {expected}")]
    WrongGroup { found: String, expected: String },
    #[error("malformed cache entry: {0}")]
    Malformed(String),
    #[error("cached table failed bar invariance at w = {0}")]
    Stale(String),
    #[error(transparent)]
    Core(#[from] heckecat_core::Error),
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format_version: u32,
    cartan: String,
    /// `[x, y, c0, c1, ...]` with `P_{x,y} = c0 + c1 q + ...`.
    #[serde(rename = "P")]
    p: Vec<Vec<Value>>,
    mu: Vec<(String, String, i64)>,
}

pub fn encode(kl: &KLCache) -> Result<String, CacheError> {
    let g = kl.group();
    let p = kl
        .p_entries()
        .into_iter()
        .map(|(x, y, poly)| {
            let mut row = vec![Value::from(g.display(x)), Value::from(g.display(y))];
            row.extend(q_coeffs(&poly).into_iter().map(Value::from));
            row
        })
        .collect();
    let mu = kl.mu_entries().into_iter().map(|(x, y, m)| (g.display(x), g.display(y), m)).collect();
    let file = CacheFile { format_version: FORMAT_VERSION, cartan: g.cartan().to_string(), p, mu };
    Ok(serde_json::to_string(&file)?)
}

pub fn decode(group: Arc<CoxeterGroup>, text: &str) -> Result<KLCache, CacheError> {
    let file: CacheFile = serde_json::from_str(text)?;
    if file.format_version != FORMAT_VERSION {
        return Err(CacheError::Version { found: file.format_version });
    }
    let expected = group.cartan().to_string();
    if file.cartan != expected {
        return Err(CacheError::WrongGroup { found: file.cartan, expected });
    }
    let g = &*group;
    let word = |v: &Value| -> Result<Element, CacheError> {
        let s = v.as_str().ok_or_else(|| CacheError::Malformed(v.to_string()))?;
        Ok(g.parse_element(s)?)
    };
    let mut p = Vec::with_capacity(file.p.len());
    for row in &file.p {
        if row.len() < 3 {
            return Err(CacheError::Malformed(format!("{row:?}")));
        }
        let mut poly = LaurentPoly::zero();
        for (k, c) in row[2..].iter().enumerate() {
            let c = c.as_i64().ok_or_else(|| CacheError::Malformed(c.to_string()))?;
            poly.add_term(k as i32, c)?;
        }
        p.push((word(&row[0])?, word(&row[1])?, poly));
    }
    let mut mu = Vec::with_capacity(file.mu.len());
    for (x, y, m) in &file.mu {
        mu.push((g.parse_element(x)?, g.parse_element(y)?, *m));
    }
    Ok(KLCache::from_tables(group, &p, &mu)?)
}

/// Re-checks bar invariance of `uH_w` and `ucH_w` at random `w`.
pub fn validate(kl: &KLCache, seed: u64) -> Result<(), CacheError> {
    let g = kl.group();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..VALIDATION_SAMPLES {
        let w = Element::from_index(rng.random_range(0..g.order()));
        let ok = kl.bar(kl.kl_basis(w))? == *kl.kl_basis(w)
            && kl.bar(kl.twisted_kl_basis(w))? == *kl.twisted_kl_basis(w);
        if !ok {
            return Err(CacheError::Stale(g.display(w)));
        }
    }
    Ok(())
}

/// Where a table came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Loaded,
    /// Computed, and written to the cache if one is configured.
    Computed { saved: bool },
}

/// A cache directory.
#[derive(Debug, Clone)]
pub struct CacheStore {
    dir: PathBuf,
}

impl CacheStore {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// An explicit directory, else `HECKECAT_CACHE`, else the per-user data directory.
    pub fn resolve(explicit: Option<PathBuf>) -> Option<Self> {
        explicit
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
            .or_else(|| dirs::data_dir().map(|d| d.join("heckecat")))
            .map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, cartan: CartanType) -> PathBuf {
        self.dir.join(format!("kl-{cartan}.json"))
    }

    /// `Ok(None)` when no file exists for this type.
    pub fn load(&self, group: Arc<CoxeterGroup>, seed: u64) -> Result<Option<KLCache>, CacheError> {
        let path = self.path_for(group.cartan());
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(source) => return Err(CacheError::Io { path, source }),
        };
        let kl = decode(group, &text)?;
        validate(&kl, seed)?;
        Ok(Some(kl))
    }

    pub fn save(&self, kl: &KLCache) -> Result<PathBuf, CacheError> {
        let io = |path: &Path| {
            let path = path.to_path_buf();
            move |source| CacheError::Io { path, source }
        };
        fs::create_dir_all(&self.dir).map_err(io(&self.dir))?;
        let path = self.path_for(kl.group().cartan());
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, encode(kl)?).map_err(io(&tmp))?;
        fs::rename(&tmp, &path).map_err(io(&path))?;
        Ok(path)
    }

    /// Cached Cartan types with their file sizes.
    pub fn entries(&self) -> Result<Vec<(String, u64)>, CacheError> {
        let mut out = Vec::new();
        let rd = match fs::read_dir(&self.dir) {
            Ok(rd) => rd,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(out),
            Err(source) => return Err(CacheError::Io { path: self.dir.clone(), source }),
        };
        for entry in rd.flatten() {
            let name = entry.file_name().to_string_lossy().into_owned();
            if let Some(t) = name.strip_prefix("kl-").and_then(|n| n.strip_suffix(".json")) {
                let len = entry.metadata().map(|m| m.len()).unwrap_or(0);
                out.push((t.to_string(), len));
            }
        }
        out.sort();
        Ok(out)
    }

    /// Removes the file for one type, or every cache file. Returns how many went.
    pub fn clear(&self, cartan: Option<CartanType>) -> Result<usize, CacheError> {
        let targets: Vec<PathBuf> = match cartan {
            Some(t) => vec![self.path_for(t)],
            None => self.entries()?.into_iter().map(|(t, _)| self.dir.join(format!("kl-{t}.json"))).collect(),
        };
        let mut n = 0;
        for path in targets {
            match fs::remove_file(&path) {
                Ok(()) => n += 1,
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
                Err(source) => return Err(CacheError::Io { path, source }),
            }
        }
        Ok(n)
    }
}

/// Loads the table for `group` from `store`, or computes it and writes it
/// back. A stale or unreadable file is reported through `warn` and replaced.
pub fn obtain(
    store: Option<&CacheStore>,
    group: Arc<CoxeterGroup>,
    seed: u64,
    mut warn: impl FnMut(String),
) -> Result<(KLCache, Provenance), CacheError> {
    if let Some(store) = store {
        match store.load(group.clone(), seed) {
            Ok(Some(kl)) => return Ok((kl, Provenance::Loaded)),
            Ok(None) => {}
            Err(e) => warn(format!("ignoring cached table: {e}")),
        }
    }
    let kl = KLCache::new(group)?;
    let saved = match store.map(|s| s.save(&kl)) {
        Some(Ok(_)) => true,
        Some(Err(e)) => {
            warn(format!("could not write cache: {e}"));
            false
        }
        None => false,
    };
    Ok((kl, Provenance::Computed { saved }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_a3() {
        let g = Arc::new(CoxeterGroup::build("A3".parse().unwrap()).unwrap());
        let kl = KLCache::new(g.clone()).unwrap();
        let text = encode(&kl).unwrap();
        let back = decode(g, &text).unwrap();
        assert_eq!(back.p_entries(), kl.p_entries());
        assert_eq!(back.mu_entries(), kl.mu_entries());
        validate(&back, 7).unwrap();
    }

    #[test]
    fn rejects_other_versions_and_groups() {
        let g = Arc::new(CoxeterGroup::build("A2".parse().unwrap()).unwrap());
        let text = encode(&KLCache::new(g.clone()).unwrap()).unwrap();
        let bumped = text.replace("\"format_version\":1", "\"format_version\":9");
        assert!(matches!(decode(g.clone(), &bumped), Err(CacheError::Version { found: 9 })));
        let b2 = Arc::new(CoxeterGroup::build("B2".parse().unwrap()).unwrap());
        assert!(matches!(decode(b2, &text), Err(CacheError::WrongGroup { .. })));
    }
}
