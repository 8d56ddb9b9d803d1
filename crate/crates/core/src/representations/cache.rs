//! Memo of class decompositions keyed by `(form, k)`, optionally persisted
//! as newline-delimited JSON records `{form, k, classes}`.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::classes::{rep_classes, RepClass};
use crate::arith::bigint_str;
use crate::error::{Error, Result};
use crate::forms::QuadForm;

#[derive(Serialize, Deserialize)]
struct Record {
    form: String,
    #[serde(with = "bigint_str")]
    k: BigInt,
    classes: Vec<RepClass>,
}

/// Concurrent readers share the map; inserts take the write lock. A value
/// computed twice by racing workers is identical, so the first insert wins.
#[derive(Debug, Default)]
pub struct RepCache {
    map: RwLock<HashMap<(QuadForm, BigInt), Arc<Vec<RepClass>>>>,
}

impl RepCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Cached result of [`rep_classes`].
    pub fn rep_classes(&self, q: &QuadForm, k: &BigInt) -> Result<Arc<Vec<RepClass>>> {
        let key = (q.clone(), k.clone());
        if let Some(v) = self.map.read().expect("cache lock poisoned").get(&key) {
            return Ok(Arc::clone(v));
        }
        let computed = Arc::new(rep_classes(q, k)?);
        let mut w = self.map.write().expect("cache lock poisoned");
        Ok(Arc::clone(w.entry(key).or_insert(computed)))
    }

    /// Loads records from `path`; a missing file is an empty cache.
    pub fn load(path: &Path) -> Result<Self> {
        let cache = RepCache::new();
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e.into()),
        };
        {
            let mut map = cache.map.write().expect("cache lock poisoned");
            for (i, line) in BufReader::new(file).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let rec: Record = serde_json::from_str(&line)
                    .map_err(|e| Error::Parse(format!("cache line {}: {e}", i + 1)))?;
                let form: QuadForm = rec.form.parse()?;
                map.insert((form, rec.k), Arc::new(rec.classes));
            }
        }
        Ok(cache)
    }

    /// Writes every record, ordered by form and then `k`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let map = self.map.read().expect("cache lock poisoned");
        let mut keys: Vec<&(QuadForm, BigInt)> = map.keys().collect();
        keys.sort();
        let mut out = BufWriter::new(File::create(path)?);
        for key in keys {
            let rec = Record {
                form: key.0.to_string(),
                k: key.1.clone(),
                classes: map[key].as_ref().clone(),
            };
            serde_json::to_writer(&mut out, &rec)?;
            out.write_all(b"\n")?;
        }
        out.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_through_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        let cache = RepCache::new();
        let f = QuadForm::new(1, 0, -2);
        let k = BigInt::from(119).pow(3);
        let direct = cache.rep_classes(&f, &k).unwrap();
        cache.rep_classes(&QuadForm::new(1, 0, 1), &BigInt::from(25)).unwrap();
        cache.save(&path).unwrap();
        let loaded = RepCache::load(&path).unwrap();
        assert_eq!(loaded.len(), 2);
        assert_eq!(loaded.rep_classes(&f, &k).unwrap(), direct);
        assert!(RepCache::load(&dir.path().join("missing.jsonl")).unwrap().is_empty());
    }
}
