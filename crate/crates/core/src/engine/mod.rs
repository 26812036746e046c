//! Exact Turán numbers `ex(n, F)` and `ex_conn(n, F)` with full extremal catalogs.

mod cache;

pub use cache::{CacheKey, ResultCache, CACHE_ENV};

use crate::enumerate::{is_connected, Generator, Node, DEFAULT_LIMIT};
use crate::error::{Error, Result};
use crate::family::GraphFamily;
use crate::graph::{CanonicalForm, Graph};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

pub const ENGINE_VERSION: &str = concat!("turanlab-", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    All,
    Connected,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::All => "all",
            Mode::Connected => "connected",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "all" => Ok(Mode::All),
            "connected" | "conn" => Ok(Mode::Connected),
            _ => Err(Error::BadSpec { offset: 0, msg: format!("unknown mode {s:?}, expected all or connected") }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuranResult {
    pub n: usize,
    pub family: GraphFamily,
    pub mode: Mode,
    pub value: usize,
    /// Canonical representatives of every extremal graph, sorted by canonical form.
    pub extremal: Vec<Graph>,
    pub exhaustive: bool,
}

impl TuranResult {
    pub fn contains_isomorph(&self, g: &Graph) -> bool {
        let target = g.canonical();
        self.extremal.contains(&target)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "family": self.family.graph6_list(),
            "family_label": self.family.label(),
            "mode": self.mode,
            "value": self.value,
            "extremal": self.extremal.iter().map(Graph::to_graph6).collect::<Vec<_>>(),
            "exhaustive": self.exhaustive,
        })
    }
}

#[derive(Debug)]
pub struct TuranEngine {
    cache: Option<ResultCache>,
    threads: usize,
    limit: usize,
}

impl Default for TuranEngine {
    fn default() -> Self {
        TuranEngine { cache: None, threads: 1, limit: DEFAULT_LIMIT }
    }
}

impl TuranEngine {
    pub fn new() -> TuranEngine {
        TuranEngine::default()
    }

    /// Uses a cache at the path in `TURANLAB_CACHE`, if set.
    pub fn from_env() -> Result<TuranEngine> {
        let engine = TuranEngine::new();
        match std::env::var_os(CACHE_ENV) {
            Some(path) if !path.is_empty() => Ok(engine.with_cache(ResultCache::open(path)?)),
            _ => Ok(engine),
        }
    }

    pub fn with_cache(mut self, cache: ResultCache) -> TuranEngine {
        self.cache = Some(cache);
        self
    }

    /// 0 means the rayon default.
    pub fn with_threads(mut self, threads: usize) -> TuranEngine {
        self.threads = threads;
        self
    }

    pub fn with_limit(mut self, limit: usize) -> TuranEngine {
        self.limit = limit;
        self
    }

    pub fn threads(&self) -> usize {
        self.threads
    }

    pub fn cache(&self) -> Option<&ResultCache> {
        self.cache.as_ref()
    }

    pub fn turan(&self, n: usize, fam: &GraphFamily, mode: Mode) -> Result<TuranResult> {
        if n > self.limit {
            return Err(Error::Oversize { n, limit: self.limit });
        }
        let key = CacheKey::new(n, fam, mode);
        if let Some(cache) = &self.cache {
            if let Some(hit) = cache.get(&key)? {
                return Ok(TuranResult { family: fam.clone(), ..hit });
            }
        }
        let (value, forms) = search(n, fam, mode, self.threads)?;
        let result = TuranResult {
            n,
            family: fam.clone(),
            mode,
            value,
            extremal: forms.iter().map(CanonicalForm::to_graph).collect(),
            exhaustive: true,
        };
        if let Some(cache) = &self.cache {
            cache.put(&result)?;
        }
        Ok(result)
    }

    pub fn ex(&self, n: usize, fam: &GraphFamily) -> Result<usize> {
        Ok(self.turan(n, fam, Mode::All)?.value)
    }

    pub fn ex_conn(&self, n: usize, fam: &GraphFamily) -> Result<usize> {
        Ok(self.turan(n, fam, Mode::Connected)?.value)
    }
}

/// Uncached single-threaded computation.
pub fn turan(n: usize, fam: &GraphFamily, mode: Mode) -> Result<TuranResult> {
    TuranEngine::new().turan(n, fam, mode)
}

/// Most edges any descendant on `n` vertices can have. Every tree step
/// deletes a minimum-degree vertex, and deleting a vertex lowers the minimum
/// degree by at most one, so the vertex added at order `m + s` has degree at
/// most `min(delta + s, m + s - 1)`.
fn completion_bound(g: &Graph, n: usize) -> usize {
    let m = g.order();
    let delta = g.min_degree();
    g.edge_count() + (1..=n - m).map(|s| (delta + s).min(m + s - 1)).sum::<usize>()
}

fn search(n: usize, fam: &GraphFamily, mode: Mode, threads: usize) -> Result<(usize, Vec<CanonicalForm>)> {
    let gen = Generator::new(n, fam);
    let incumbent = AtomicUsize::new(0);
    let any = AtomicUsize::new(0);
    let prune = |g: &Graph| completion_bound(g, n) < incumbent.load(Ordering::Relaxed);
    let leaf = |node: &Node| {
        if mode == Mode::Connected && !is_connected(&node.g) {
            return None;
        }
        any.store(1, Ordering::Relaxed);
        let e = node.g.edge_count();
        let before = incumbent.fetch_max(e, Ordering::Relaxed);
        (e >= before).then(|| (e, node.form.clone()))
    };
    let mut found = Vec::new();
    gen.run(threads, &prune, &leaf, &mut |hit| found.push(hit))?;
    if any.load(Ordering::Relaxed) == 0 {
        return Err(Error::NoAdmissibleGraph { n, mode: mode.as_str() });
    }
    let value = found.iter().map(|(e, _)| *e).max().unwrap_or(0);
    let mut forms: Vec<CanonicalForm> = found.into_iter().filter(|(e, _)| *e == value).map(|(_, f)| f).collect();
    forms.sort();
    forms.dedup();
    Ok((value, forms))
}
