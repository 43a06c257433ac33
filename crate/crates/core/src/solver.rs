//! Exact 4-cycle decomposition search over arbitrary multigraphs.
//!
//! The problem is a multiset exact cover: every edge `uv` of multiplicity `k`
//! must be covered by exactly `k` chosen cycles. Parallel edges are treated as
//! interchangeable counts, never as labelled copies. At each node the search
//! branches on the uncovered edge with the fewest live candidate cycles
//! (smallest edge first on ties). While an edge still has multiplicity left
//! it keeps being the branching edge and candidates are taken in
//! nondecreasing order, so each multiset of cycles is visited once.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use crate::multigraph::{verify_decomposition, Decomposition, FourCycle, MultiGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    FindOne,
    ProveNone,
}

/// Order in which candidate cycles are tried.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CandidateOrder {
    Canonical,
    Reversed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub node_limit: u64,
    pub time_limit: Duration,
    pub mode: SearchMode,
    pub order: CandidateOrder,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            node_limit: 100_000_000,
            time_limit: Duration::from_secs(60),
            mode: SearchMode::FindOne,
            order: CandidateOrder::Canonical,
        }
    }
}

impl SearchBudget {
    pub fn with_nodes(node_limit: u64) -> Self {
        SearchBudget {
            node_limit,
            ..Self::default()
        }
    }

    pub fn prove_none(self) -> Self {
        SearchBudget {
            mode: SearchMode::ProveNone,
            ..self
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Decomposition),
    NoneExists,
    BudgetExceeded(SearchStats),
}

/// Every 4-cycle whose four vertex pairs are adjacent in `g`, canonical and
/// sorted.
pub fn enumerate_candidate_cycles(g: &MultiGraph) -> Vec<FourCycle> {
    let index = IndexedGraph::new(g);
    index
        .candidates()
        .into_iter()
        .map(|c| {
            FourCycle::new(
                index.labels[c[0]],
                index.labels[c[1]],
                index.labels[c[2]],
                index.labels[c[3]],
            )
            .expect("candidate vertices are distinct")
        })
        .collect()
}

/// Searches for a decomposition; `NoneExists` means the whole tree was
/// exhausted.
pub fn find_decomposition(g: &MultiGraph, budget: SearchBudget) -> SearchOutcome {
    let start = Instant::now();
    let degrees = g.degrees();
    if degrees.values().any(|d| d % 2 == 1) || !g.edge_count().is_multiple_of(4) {
        return SearchOutcome::NoneExists;
    }
    let index = IndexedGraph::new(g);
    let mut cands = index.candidates();
    if budget.order == CandidateOrder::Reversed {
        cands.reverse();
    }
    let mut search = Search::new(&index, cands, budget, start);
    match search.run() {
        Flow::Found => {
            let d: Decomposition = search
                .chosen
                .iter()
                .map(|&c| {
                    let v = search.cand_vertices[c];
                    FourCycle::new(
                        index.labels[v[0]],
                        index.labels[v[1]],
                        index.labels[v[2]],
                        index.labels[v[3]],
                    )
                    .expect("candidate vertices are distinct")
                })
                .collect();
            let report = verify_decomposition(g, &d);
            assert!(report.is_ok(), "solver produced an invalid cover: {report}");
            SearchOutcome::Found(d)
        }
        Flow::Exhausted => SearchOutcome::NoneExists,
        Flow::OutOfBudget => SearchOutcome::BudgetExceeded(SearchStats {
            nodes: search.nodes,
            elapsed: start.elapsed(),
        }),
    }
}

/// Same search run in `ProveNone` mode: returns `NoneExists` only after the
/// branch tree is exhausted, and a verified decomposition if one turns up.
pub fn prove_nonexistence(g: &MultiGraph, budget: SearchBudget) -> SearchOutcome {
    find_decomposition(g, budget.prove_none())
}

struct IndexedGraph {
    labels: Vec<VertexId>,
    adjacency: Vec<Vec<bool>>,
    edge_ids: BTreeMap<(usize, usize), usize>,
    multiplicity: Vec<u32>,
}

impl IndexedGraph {
    fn new(g: &MultiGraph) -> Self {
        let labels: Vec<VertexId> = g.vertices().collect();
        let pos: BTreeMap<VertexId, usize> = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = labels.len();
        let mut adjacency = vec![vec![false; n]; n];
        let mut edge_ids = BTreeMap::new();
        let mut multiplicity = Vec::new();
        for (u, v, c) in g.edges() {
            let (a, b) = (pos[&u], pos[&v]);
            adjacency[a][b] = true;
            adjacency[b][a] = true;
            edge_ids.insert((a.min(b), a.max(b)), multiplicity.len());
            multiplicity.push(c);
        }
        IndexedGraph {
            labels,
            adjacency,
            edge_ids,
            multiplicity,
        }
    }

    fn candidates(&self) -> Vec<[usize; 4]> {
        let n = self.labels.len();
        let mut out = Vec::new();
        for a in 0..n {
            let up: Vec<usize> = (a + 1..n).filter(|&b| self.adjacency[a][b]).collect();
            for (x, &b) in up.iter().enumerate() {
                for &d in &up[x + 1..] {
                    for c in a + 1..n {
                        if c != b && c != d && self.adjacency[b][c] && self.adjacency[d][c] {
                            out.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn edge(&self, a: usize, b: usize) -> usize {
        self.edge_ids[&(a.min(b), a.max(b))]
    }
}

enum Flow {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Search {
    cand_vertices: Vec<[usize; 4]>,
    cand_edges: Vec<[usize; 4]>,
    edge_cands: Vec<Vec<usize>>,
    residual: Vec<u32>,
    zero_count: Vec<u8>,
    live: Vec<u32>,
    remaining: u64,
    chosen: Vec<usize>,
    nodes: u64,
    budget: SearchBudget,
    start: Instant,
}

impl Search {
    fn new(g: &IndexedGraph, cands: Vec<[usize; 4]>, budget: SearchBudget, start: Instant) -> Self {
        let edge_count = g.multiplicity.len();
        let cand_edges: Vec<[usize; 4]> = cands
            .iter()
            .map(|v| {
                [
                    g.edge(v[0], v[1]),
                    g.edge(v[1], v[2]),
                    g.edge(v[2], v[3]),
                    g.edge(v[3], v[0]),
                ]
            })
            .collect();
        let mut edge_cands = vec![Vec::new(); edge_count];
        for (c, es) in cand_edges.iter().enumerate() {
            for &e in es {
                edge_cands[e].push(c);
            }
        }
        let live = edge_cands.iter().map(|l| l.len() as u32).collect();
        let zero_count = vec![0; cand_edges.len()];
        Search {
            cand_vertices: cands,
            cand_edges,
            edge_cands,
            residual: g.multiplicity.clone(),
            zero_count,
            live,
            remaining: g.multiplicity.iter().map(|&c| u64::from(c)).sum(),
            chosen: Vec::new(),
            nodes: 0,
            budget,
            start,
        }
    }

    fn apply(&mut self, c: usize) {
        for k in 0..4 {
            let e = self.cand_edges[c][k];
            self.residual[e] -= 1;
            if self.residual[e] == 0 {
                for &c2 in &self.edge_cands[e] {
                    if self.zero_count[c2] == 0 {
                        for &f in &self.cand_edges[c2] {
                            self.live[f] -= 1;
                        }
                    }
                    self.zero_count[c2] += 1;
                }
            }
        }
        self.remaining -= 4;
        self.chosen.push(c);
    }

    fn undo(&mut self, c: usize) {
        self.chosen.pop();
        self.remaining += 4;
        for k in (0..4).rev() {
            let e = self.cand_edges[c][k];
            if self.residual[e] == 0 {
                for &c2 in &self.edge_cands[e] {
                    self.zero_count[c2] -= 1;
                    if self.zero_count[c2] == 0 {
                        for &f in &self.cand_edges[c2] {
                            self.live[f] += 1;
                        }
                    }
                }
            }
            self.residual[e] += 1;
        }
    }

    fn out_of_budget(&self) -> bool {
        self.nodes > self.budget.node_limit
            || (self.nodes.is_multiple_of(1024) && self.start.elapsed() > self.budget.time_limit)
    }

    fn run(&mut self) -> Flow {
        self.descend(None)
    }

    /// `pinned` is the previous branching edge and the index of the candidate
    /// chosen for it.
    fn descend(&mut self, pinned: Option<(usize, usize)>) -> Flow {
        self.nodes += 1;
        if self.out_of_budget() {
            return Flow::OutOfBudget;
        }
        if self.remaining == 0 {
            return Flow::Found;
        }
        let mut best: Option<(u32, usize)> = None;
        for (e, &r) in self.residual.iter().enumerate() {
            if r > 0 && best.is_none_or(|(l, _)| self.live[e] < l) {
                best = Some((self.live[e], e));
                if self.live[e] == 0 {
                    return Flow::Exhausted;
                }
            }
        }
        let (edge, floor) = match pinned {
            Some((e, c)) if self.residual[e] > 0 => (e, c),
            _ => (best.expect("remaining > 0 implies an uncovered edge").1, 0),
        };
        let options: Vec<usize> = self.edge_cands[edge]
            .iter()
            .copied()
            .filter(|&c| c >= floor && self.zero_count[c] == 0)
            .collect();
        for c in options {
            self.apply(c);
            match self.descend(Some((edge, c))) {
                Flow::Exhausted => self.undo(c),
                other => return other,
            }
        }
        Flow::Exhausted
    }
}
