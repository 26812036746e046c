//! Persistent JSONL store of exhaustive Turán results.

use super::{Mode, TuranResult, ENGINE_VERSION};
use crate::error::{Error, Result};
use crate::family::GraphFamily;
use crate::graph::{from_graph6, Graph};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

pub const CACHE_ENV: &str = "TURANLAB_CACHE";

/// Results are keyed by the canonical members of the family, never its label.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CacheKey {
    pub n: usize,
    pub family: Vec<String>,
    pub mode: Mode,
}

impl CacheKey {
    pub fn new(n: usize, fam: &GraphFamily, mode: Mode) -> CacheKey {
        let mut family = fam.graph6_list();
        family.sort();
        CacheKey { n, family, mode }
    }
}

#[derive(Serialize, Deserialize)]
struct Record {
    n: usize,
    mode: Mode,
    family: Vec<String>,
    value: usize,
    extremal: Vec<String>,
    exhaustive: bool,
    engine_version: String,
}

#[derive(Debug)]
pub struct ResultCache {
    path: PathBuf,
    entries: Mutex<HashMap<CacheKey, TuranResult>>,
}

fn corrupt(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::CorruptCache(format!("line {line}: {msg}"))
}

/// Decodes a graph6 string that must already be in canonical form.
fn canonical_graph(line: usize, s: &str) -> Result<Graph> {
    let g = from_graph6(s).map_err(|e| corrupt(line, e))?;
    let c = g.canonical();
    if c != g {
        return Err(corrupt(line, format!("{s} is not canonical (expected {c})")));
    }
    Ok(g)
}

impl ResultCache {
    /// Opens the store, creating it if missing. Every record is re-checked:
    /// graphs must be canonical and the catalog must match `n` and `value`.
    pub fn open(path: impl AsRef<Path>) -> Result<ResultCache> {
        let path = path.as_ref().to_path_buf();
        let mut entries = HashMap::new();
        if path.exists() {
            for (i, line) in BufReader::new(File::open(&path)?).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let rec: Record = serde_json::from_str(&line).map_err(|e| corrupt(i + 1, e))?;
                if rec.engine_version != ENGINE_VERSION || !rec.exhaustive {
                    continue;
                }
                let members = rec.family.iter().map(|s| canonical_graph(i + 1, s)).collect::<Result<Vec<_>>>()?;
                let family = GraphFamily::new(rec.family.join(","), members);
                let extremal = rec.extremal.iter().map(|s| canonical_graph(i + 1, s)).collect::<Result<Vec<_>>>()?;
                if extremal.iter().any(|g| g.order() != rec.n || g.edge_count() != rec.value) {
                    return Err(corrupt(i + 1, "extremal graph does not match n and value"));
                }
                let key = CacheKey::new(rec.n, &family, rec.mode);
                let mut sorted = rec.family.clone();
                sorted.sort();
                if key.family != sorted {
                    return Err(corrupt(i + 1, "family fingerprint mismatch"));
                }
                let result = TuranResult { n: rec.n, family, mode: rec.mode, value: rec.value, extremal, exhaustive: true };
                entries.entry(key).or_insert(result);
            }
        }
        Ok(ResultCache { path, entries: Mutex::new(entries) })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, key: &CacheKey) -> Result<Option<TuranResult>> {
        Ok(self.entries.lock().unwrap().get(key).cloned())
    }

    /// Stores an exhaustive result. Storing the same key again is a no-op.
    pub fn put(&self, result: &TuranResult) -> Result<()> {
        if !result.exhaustive {
            return Ok(());
        }
        let key = CacheKey::new(result.n, &result.family, result.mode);
        let mut entries = self.entries.lock().unwrap();
        if entries.contains_key(&key) {
            return Ok(());
        }
        let rec = Record {
            n: result.n,
            mode: result.mode,
            family: key.family.clone(),
            value: result.value,
            extremal: result.extremal.iter().map(Graph::to_graph6).collect(),
            exhaustive: true,
            engine_version: ENGINE_VERSION.to_string(),
        };
        let mut line = serde_json::to_string(&rec).map_err(|e| Error::Io(e.to_string()))?;
        line.push('\n');
        OpenOptions::new().create(true).append(true).open(&self.path)?.write_all(line.as_bytes())?;
        entries.insert(key, result.clone());
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::TuranEngine;

    fn lines(path: &Path) -> usize {
        std::fs::read_to_string(path).unwrap().lines().count()
    }

    #[test]
    fn put_get_roundtrip_and_idempotence() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        let fam = GraphFamily::parse("P4").unwrap();
        let engine = TuranEngine::new().with_cache(ResultCache::open(&path).unwrap());
        let first = engine.turan(6, &fam, Mode::All).unwrap();
        let cache = engine.cache().unwrap();
        assert_eq!(cache.get(&CacheKey::new(6, &fam, Mode::All)).unwrap().unwrap(), first);
        assert_eq!(cache.get(&CacheKey::new(7, &fam, Mode::All)).unwrap(), None);
        cache.put(&first).unwrap();
        assert_eq!(lines(&path), 1);

        let reopened = ResultCache::open(&path).unwrap();
        let hit = reopened.get(&CacheKey::new(6, &fam, Mode::All)).unwrap().unwrap();
        assert_eq!(hit.value, 6);
        assert_eq!(hit.extremal, first.extremal);
    }

    #[test]
    fn key_ignores_label_and_member_order() {
        let a = GraphFamily::parse("P6,K3").unwrap();
        let b = GraphFamily::parse("C3, P6").unwrap();
        assert_eq!(CacheKey::new(8, &a, Mode::All), CacheKey::new(8, &b, Mode::All));
        assert_ne!(CacheKey::new(8, &a, Mode::All), CacheKey::new(8, &a, Mode::Connected));
    }

    #[test]
    fn corrupt_records_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.jsonl");
        std::fs::write(&path, "not json\n").unwrap();
        assert!(matches!(ResultCache::open(&path), Err(Error::CorruptCache(_))));

        let labelings = [[(0, 1), (1, 2)], [(0, 1), (0, 2)], [(0, 2), (1, 2)]];
        let skewed = labelings.iter().map(|e| Graph::from_edges(3, e)).find(|g| g.canonical() != *g).unwrap();
        let rec = format!(
            r#"{{"n":3,"mode":"all","family":["{skewed}"],"value":0,"extremal":[],"exhaustive":true,"engine_version":"{ENGINE_VERSION}"}}"#
        );
        std::fs::write(&path, rec + "\n").unwrap();
        assert!(matches!(ResultCache::open(&path), Err(Error::CorruptCache(_))));

        let k2 = Graph::from_edges(2, &[(0, 1)]).canonical().to_graph6();
        let wrong_value = format!(
            r#"{{"n":2,"mode":"all","family":["{k2}"],"value":1,"extremal":["A?"],"exhaustive":true,"engine_version":"{ENGINE_VERSION}"}}"#
        );
        std::fs::write(&path, wrong_value + "\n").unwrap();
        assert!(matches!(ResultCache::open(&path), Err(Error::CorruptCache(_))));
    }
}
