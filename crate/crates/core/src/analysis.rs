//! Weight-distribution evaluation with an optional append-only JSONL cache.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::codes::{DistanceStatus, LinearCode, Method, MinDistance, WeightDistribution};
use crate::error::{Error, Result};

/// Environment variable overriding the cache location.
pub const CACHE_ENV: &str = "BCHFAM_CACHE";

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    q: u64,
    n: usize,
    k: usize,
    budget: u64,
    counts: Vec<String>,
    exact: bool,
    method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bound: Option<u64>,
}

/// Results keyed by a hash of the code's construction and the budget.
pub struct Cache {
    path: PathBuf,
    entries: Mutex<HashMap<String, WeightDistribution>>,
    file: Mutex<Option<File>>,
}

impl Cache {
    /// `$BCHFAM_CACHE`, else `$XDG_CACHE_HOME/bchfam/results.jsonl`, else
    /// `$HOME/.cache/bchfam/results.jsonl`.
    pub fn default_path() -> Option<PathBuf> {
        if let Some(p) = std::env::var_os(CACHE_ENV) {
            return Some(PathBuf::from(p));
        }
        let base = std::env::var_os("XDG_CACHE_HOME")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
        Some(base.join("bchfam").join("results.jsonl"))
    }

    /// Loads existing records; unreadable lines are skipped.
    pub fn open(path: &Path) -> Result<Self> {
        let mut entries = HashMap::new();
        if let Ok(f) = File::open(path) {
            for line in BufReader::new(f).lines() {
                let Ok(e) = serde_json::from_str::<Entry>(&line?) else { continue };
                let counts: Option<Vec<BigUint>> = e.counts.iter().map(|c| c.parse().ok()).collect();
                if let Some(counts) = counts {
                    entries.insert(e.key, WeightDistribution::from_parts(counts, e.exact, e.method, e.bound));
                }
            }
        }
        Ok(Cache {
            path: path.to_path_buf(),
            entries: Mutex::new(entries),
            file: Mutex::new(None),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get(&self, key: &str) -> Option<WeightDistribution> {
        self.entries.lock().expect("cache lock").get(key).cloned()
    }

    /// Appends one record as a single write.
    fn put(&self, key: &str, code: &LinearCode, budget: u64, dist: &WeightDistribution) -> Result<()> {
        let entry = Entry {
            key: key.to_string(),
            q: code.q(),
            n: code.n(),
            k: code.k(),
            budget,
            counts: dist.counts().iter().map(|c| c.to_str_radix(10)).collect(),
            exact: dist.is_exact(),
            method: dist.method(),
            bound: dist.bound(),
        };
        let mut line = serde_json::to_string(&entry).map_err(|e| Error::Io(e.to_string()))?;
        line.push('\n');
        let mut guard = self.file.lock().expect("cache lock");
        if guard.is_none() {
            if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            *guard = Some(OpenOptions::new().create(true).append(true).open(&self.path)?);
        }
        let f = guard.as_mut().expect("opened above");
        f.write_all(line.as_bytes())?;
        f.flush()?;
        self.entries.lock().expect("cache lock").insert(key.to_string(), dist.clone());
        Ok(())
    }
}

/// Cache key: the field size, length, kind, the defining set the code
/// descends from, the derivation steps, and the budget.
pub fn cache_key(code: &LinearCode, budget: u64) -> String {
    let prov = code.provenance();
    let elems = prov.defining_set.as_ref().map(|t| t.elems().to_vec()).unwrap_or_default();
    let material = serde_json::json!({
        "q": code.q(),
        "n": code.n(),
        "k": code.k(),
        "kind": code.kind(),
        "defining_set": elems,
        "root_kind": prov.defining_set.as_ref().map(|t| t.kind()),
        "root_n": prov.defining_set.as_ref().map(|t| t.n()),
        "ops": prov.ops,
        "budget": budget,
    });
    let mut h = Sha256::new();
    h.update(material.to_string().as_bytes());
    // Derived codes without a defining set are identified by their matrix.
    if prov.defining_set.is_none() {
        for row in code.generator_matrix() {
            let bytes: Vec<u8> = row.iter().map(|e| e.code() as u8).collect();
            h.update(&bytes);
        }
    }
    hex::encode(h.finalize())
}

/// Budget plus an optional cache.
pub struct Analyzer {
    budget: u64,
    cache: Option<Cache>,
}

impl Analyzer {
    pub fn new(budget: u64) -> Self {
        Analyzer { budget, cache: None }
    }

    pub fn with_cache(budget: u64, cache: Cache) -> Self {
        Analyzer {
            budget,
            cache: Some(cache),
        }
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn cache(&self) -> Option<&Cache> {
        self.cache.as_ref()
    }

    pub fn distribution(&self, code: &LinearCode) -> Result<WeightDistribution> {
        let Some(cache) = &self.cache else {
            return code.weight_distribution(self.budget);
        };
        let key = cache_key(code, self.budget);
        if let Some(d) = cache.get(&key) {
            return Ok(d);
        }
        let d = code.weight_distribution(self.budget)?;
        // Only results that took real work are worth a record.
        if d.is_exact() {
            cache.put(&key, code, self.budget, &d)?;
        }
        Ok(d)
    }

    pub fn min_distance(&self, code: &LinearCode) -> Result<(MinDistance, WeightDistribution)> {
        let dist = self.distribution(code)?;
        let md = if dist.is_exact() {
            MinDistance {
                d: dist.min_distance().map(|d| d as u64),
                status: DistanceStatus::Exact,
            }
        } else {
            MinDistance {
                d: (code.k() > 0).then_some(code.lower_bound()),
                status: DistanceStatus::LowerBoundOnly,
            }
        };
        Ok((md, dist))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::DEFAULT_BUDGET;
    use crate::cosets::{DefiningSet, Kind};
    use crate::gf::make_field;

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sub").join("c.jsonl");
        let f = make_field(2, 1).unwrap();
        let t = DefiningSet::from_reps(2, 21, Kind::Cyclic, &[0, 1, 3]).unwrap();
        let code = LinearCode::from_defining_set(&f, &t).unwrap();
        let short = code.shorten(0).unwrap();

        let a = Analyzer::with_cache(DEFAULT_BUDGET, Cache::open(&path).unwrap());
        let d1 = a.distribution(&code).unwrap();
        let s1 = a.distribution(&short).unwrap();
        assert_eq!(a.cache().unwrap().len(), 2);

        let b = Analyzer::with_cache(DEFAULT_BUDGET, Cache::open(&path).unwrap());
        assert_eq!(b.cache().unwrap().len(), 2);
        assert_eq!(b.distribution(&code).unwrap(), d1);
        assert_eq!(b.distribution(&short).unwrap(), s1);
        assert_ne!(cache_key(&code, DEFAULT_BUDGET), cache_key(&short, DEFAULT_BUDGET));
        assert_ne!(cache_key(&code, DEFAULT_BUDGET), cache_key(&code, 1));
        let lines = std::fs::read_to_string(&path).unwrap();
        assert_eq!(lines.lines().count(), 2);
    }

    #[test]
    fn garbage_lines_are_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        std::fs::write(&path, "not json\n{\"key\": 1}\n").unwrap();
        assert!(Cache::open(&path).unwrap().is_empty());
    }
}
