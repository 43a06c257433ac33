use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Mutex, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use super::{checked, infeasible};
use crate::error::{Error, Result};
use crate::multigraph::{verify_decomposition, Decomposition, FourCycle, MultiGraph, VertexId};
use crate::solver::{find_decomposition, SearchBudget, SearchOutcome};

pub const CACHE_FORMAT_VERSION: u32 = 1;

const MAX_CACHED_ORDER: usize = 64;
const MAX_CACHED_SIDE: usize = 16;
const MAX_CACHED_LAMBDA: u32 = 64;

/// Identifies a solver-built block.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BlockKey {
    /// `lambda (K_n - F)` with `F` given by normalized edges.
    CompleteMinusTwoFactor {
        n: usize,
        lambda: u32,
        leave: Vec<(usize, usize)>,
    },
    /// `lambda L(K_{m,n})`.
    LineGraph { m: usize, n: usize, lambda: u32 },
}

impl BlockKey {
    pub fn complete_minus_two_factor(n: usize, lambda: u32, leave: &[(usize, usize)]) -> Self {
        let mut leave: Vec<(usize, usize)> = leave.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        leave.sort_unstable();
        BlockKey::CompleteMinusTwoFactor { n, lambda, leave }
    }

    pub fn name(&self) -> String {
        match self {
            BlockKey::CompleteMinusTwoFactor { n, lambda, leave } => {
                format!("{lambda}(K_{n} - F) with |F| = {}", leave.len())
            }
            BlockKey::LineGraph { m, n, lambda } => format!("{lambda}L(K_{{{m},{n}}})"),
        }
    }

    /// The graph this block decomposes; rejects keys that are malformed or
    /// too large to rebuild.
    pub fn target(&self) -> Result<MultiGraph> {
        match self {
            BlockKey::CompleteMinusTwoFactor { n, lambda, leave } => {
                if *n > MAX_CACHED_ORDER || *lambda == 0 || *lambda > MAX_CACHED_LAMBDA {
                    return Err(Error::Precondition(format!(
                        "cache key out of range: {}",
                        self.name()
                    )));
                }
                let mut removed = MultiGraph::new();
                for &(u, v) in leave {
                    if u >= *n || v >= *n {
                        return Err(Error::Precondition(format!("leave edge {u}-{v} out of range")));
                    }
                    removed.add_edge(VertexId::Plain(u), VertexId::Plain(v), *lambda)?;
                }
                MultiGraph::complete(*n, *lambda).remove_edges(&removed)
            }
            BlockKey::LineGraph { m, n, lambda } => {
                if *m > MAX_CACHED_SIDE || *n > MAX_CACHED_SIDE || *lambda == 0 || *lambda > MAX_CACHED_LAMBDA
                {
                    return Err(Error::Precondition(format!(
                        "cache key out of range: {}",
                        self.name()
                    )));
                }
                Ok(MultiGraph::line_graph_kmn(*m, *n, *lambda))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format_version: u32,
    entries: Vec<CacheEntry>,
}

/// Cycles are stored as indices into the sorted vertex list of the target.
#[derive(Serialize, Deserialize)]
struct CacheEntry {
    key: BlockKey,
    cycles: Vec<[usize; 4]>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LoadStats {
    pub loaded: usize,
    pub discarded: usize,
}

/// Memoizes solver-built blocks, optionally backed by a JSON file.
///
/// Entries read from disk are verified against their target graph; those
/// that fail are dropped. Writes go through a temporary file and a rename.
#[derive(Debug)]
pub struct BlockCache {
    entries: RwLock<BTreeMap<BlockKey, Decomposition>>,
    path: Option<PathBuf>,
    budget: SearchBudget,
    write_lock: Mutex<()>,
    write_error: Mutex<Option<String>>,
}

impl BlockCache {
    pub fn in_memory() -> Self {
        BlockCache {
            entries: RwLock::new(BTreeMap::new()),
            path: None,
            budget: SearchBudget::default(),
            write_lock: Mutex::new(()),
            write_error: Mutex::new(None),
        }
    }

    /// Process-wide in-memory cache.
    pub fn global() -> &'static BlockCache {
        static GLOBAL: OnceLock<BlockCache> = OnceLock::new();
        GLOBAL.get_or_init(BlockCache::in_memory)
    }

    /// Opens a file-backed cache. A missing file starts empty; an unreadable
    /// one is treated as empty and overwritten on the next insert.
    pub fn open(path: impl Into<PathBuf>) -> Result<(Self, LoadStats)> {
        let path = path.into();
        let mut cache = BlockCache::in_memory();
        let mut stats = LoadStats::default();
        match fs::read_to_string(&path) {
            Ok(text) => {
                if let Ok((entries, s)) = Self::parse(&text) {
                    cache.entries = RwLock::new(entries);
                    stats = s;
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(e.into()),
        }
        cache.path = Some(path);
        Ok((cache, stats))
    }

    pub fn with_budget(mut self, budget: SearchBudget) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> SearchBudget {
        self.budget
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, key: &BlockKey) -> Option<Decomposition> {
        self.entries.read().expect("cache lock").get(key).cloned()
    }

    /// Verifies `d` against the key's target and stores it.
    pub fn insert(&self, key: BlockKey, d: Decomposition) -> Result<()> {
        let target = key.target()?;
        let d = checked(&target, d, &key.name())?;
        self.entries.write().expect("cache lock").insert(key, d);
        self.persist()
    }

    /// Most recent failure to write the backing file, if any.
    pub fn last_write_error(&self) -> Option<String> {
        self.write_error.lock().expect("cache lock").clone()
    }

    /// Returns the cached block or runs the solver on the key's target. A
    /// failure to write the backing file is recorded, not returned.
    pub fn get_or_solve(&self, key: &BlockKey) -> Result<Decomposition> {
        if let Some(d) = self.get(key) {
            return Ok(d);
        }
        let target = key.target()?;
        match find_decomposition(&target, self.budget) {
            SearchOutcome::Found(d) => {
                self.entries
                    .write()
                    .expect("cache lock")
                    .insert(key.clone(), d.clone());
                if let Err(e) = self.persist() {
                    *self.write_error.lock().expect("cache lock") = Some(e.to_string());
                }
                Ok(d)
            }
            SearchOutcome::NoneExists => Err(infeasible(key.name(), "no decomposition exists")),
            SearchOutcome::BudgetExceeded(_) => Err(Error::BudgetExceeded { block: key.name() }),
        }
    }

    /// Parses cache JSON, keeping only entries that verify. Fails only when
    /// the text is not a cache document at all.
    pub fn parse(text: &str) -> Result<(BTreeMap<BlockKey, Decomposition>, LoadStats)> {
        let file: CacheFile = serde_json::from_str(text)?;
        let mut stats = LoadStats::default();
        let mut entries = BTreeMap::new();
        if file.format_version != CACHE_FORMAT_VERSION {
            stats.discarded = file.entries.len();
            return Ok((entries, stats));
        }
        for entry in file.entries {
            match decode_entry(&entry) {
                // a repeated key replaces the earlier entry
                Some(d) => match entries.insert(entry.key, d) {
                    None => stats.loaded += 1,
                    Some(_) => stats.discarded += 1,
                },
                None => stats.discarded += 1,
            }
        }
        Ok((entries, stats))
    }

    pub fn to_json(&self) -> Result<String> {
        let entries = self.entries.read().expect("cache lock");
        let mut out = Vec::with_capacity(entries.len());
        for (key, d) in entries.iter() {
            let labels: Vec<VertexId> = key.target()?.vertices().collect();
            let index = |v: VertexId| labels.binary_search(&v).expect("cycle vertex in target");
            let cycles = d.iter().map(|c| c.vertices().map(index)).collect();
            out.push(CacheEntry {
                key: key.clone(),
                cycles,
            });
        }
        Ok(serde_json::to_string_pretty(&CacheFile {
            format_version: CACHE_FORMAT_VERSION,
            entries: out,
        })?)
    }

    fn persist(&self) -> Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        static COUNTER: AtomicU64 = AtomicU64::new(0);
        let _guard = self.write_lock.lock().expect("cache write lock");
        let text = self.to_json()?;
        let tmp = path.with_extension(format!(
            "tmp-{}-{}",
            std::process::id(),
            COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        fs::write(&tmp, text)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

fn decode_entry(entry: &CacheEntry) -> Option<Decomposition> {
    let target = entry.key.target().ok()?;
    let labels: Vec<VertexId> = target.vertices().collect();
    let mut d = Decomposition::new();
    for c in &entry.cycles {
        let mut vs = [VertexId::Plain(0); 4];
        for (slot, &i) in vs.iter_mut().zip(c) {
            *slot = *labels.get(i)?;
        }
        d.push(FourCycle::from_array(vs).ok()?);
    }
    verify_decomposition(&target, &d).is_ok().then_some(d)
}
