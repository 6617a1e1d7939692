//! On-disk cache: one JSON object per line, the last line for a key wins.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use hzeta::key::{parse_rational, ConstantId, Family};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::CliError;

const FILE_NAME: &str = "constants.jsonl";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KeyRecord {
    pub family: String,
    pub params: Map<String, Value>,
    pub digits: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: KeyRecord,
    /// Stored decimal at full working precision.
    pub value: String,
    pub error_bound: String,
    pub created_at: u64,
    pub library_version: String,
}

/// Parameters as JSON: integers as numbers, other rationals as strings.
pub fn params_json(id: &ConstantId) -> Map<String, Value> {
    id.named()
        .into_iter()
        .map(|(n, v)| {
            let value = match v.numer().to_i64() {
                Some(i) if *v.denom() == 1 => Value::from(i),
                _ => Value::from(v.to_string()),
            };
            (n.to_string(), value)
        })
        .collect()
}

fn id_from_record(r: &KeyRecord) -> Option<ConstantId> {
    let family = Family::from_str(&r.family).ok()?;
    let mut named = Vec::new();
    for (n, v) in &r.params {
        let q = match v {
            Value::Number(x) => parse_rational(&x.to_string()).ok()?,
            Value::String(s) => parse_rational(s).ok()?,
            _ => return None,
        };
        named.push((n.clone(), q));
    }
    ConstantId::new(family, &named).ok()
}

impl CacheEntry {
    pub fn new(id: &ConstantId, digits: u32, value: String, error_bound: String) -> Self {
        let created_at = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        CacheEntry {
            key: KeyRecord {
                family: id.family.name().to_string(),
                params: params_json(id),
                digits,
            },
            value,
            error_bound,
            created_at,
            library_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

pub struct Cache {
    path: PathBuf,
    entries: HashMap<ConstantId, CacheEntry>,
}

impl Cache {
    /// Loads the cache in `dir`, skipping unreadable lines and compacting
    /// the file when it holds superseded or unreadable lines.
    pub fn open(dir: &Path) -> Result<Cache, CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let path = dir.join(FILE_NAME);
        let mut entries = HashMap::new();
        let mut lines = 0usize;
        if path.exists() {
            let f = File::open(&path).map_err(|e| CliError::io(&path, e))?;
            for line in BufReader::new(f).lines() {
                let line = line.map_err(|e| CliError::io(&path, e))?;
                if line.trim().is_empty() {
                    continue;
                }
                lines += 1;
                let Ok(entry) = serde_json::from_str::<CacheEntry>(&line) else {
                    continue;
                };
                if let Some(id) = id_from_record(&entry.key) {
                    entries.insert(id, entry);
                }
            }
        }
        let cache = Cache { path, entries };
        if lines > cache.entries.len() {
            cache.compact()?;
        }
        Ok(cache)
    }

    /// Entry for `id` stored at no fewer than `digits` digits.
    pub fn get(&self, id: &ConstantId, digits: u32) -> Option<&CacheEntry> {
        self.entries.get(id).filter(|e| e.key.digits >= digits)
    }

    pub fn insert(&mut self, id: ConstantId, entry: CacheEntry) -> Result<(), CliError> {
        let line = serde_json::to_string(&entry).expect("cache entry serializes");
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| CliError::io(&self.path, e))?;
        writeln!(f, "{line}").map_err(|e| CliError::io(&self.path, e))?;
        self.entries.insert(id, entry);
        Ok(())
    }

    fn compact(&self) -> Result<(), CliError> {
        let mut ids: Vec<&ConstantId> = self.entries.keys().collect();
        ids.sort();
        let tmp = self.path.with_extension("jsonl.tmp");
        let mut f = File::create(&tmp).map_err(|e| CliError::io(&tmp, e))?;
        for id in ids {
            let line = serde_json::to_string(&self.entries[id]).expect("cache entry serializes");
            writeln!(f, "{line}").map_err(|e| CliError::io(&tmp, e))?;
        }
        f.sync_all().map_err(|e| CliError::io(&tmp, e))?;
        fs::rename(&tmp, &self.path).map_err(|e| CliError::io(&self.path, e))
    }
}
