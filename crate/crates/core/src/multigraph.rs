//! Loopless multigraphs keyed by unordered vertex pairs, 4-cycles in canonical
//! form, and the exact-cover check that ties them together.
//!
//! Vertices of `L(K_{m,n})` are the edges `{x_i, y_j}` of `K_{m,n}`; they are
//! labelled `Pair(i, j)` and laid out on an `m x n` grid. An edge is
//! *horizontal* when both endpoints share the row `i` (it lies in one copy of
//! `K_n`) and *vertical* when they share the column `j`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// A vertex label. `Plain` labels build `K_n`, `K_{m,n}` and other building
/// blocks; `Pair(i, j)` labels the vertex of `L(K_{m,n})` at row `i`, column `j`.
///
/// Ordering: `Plain` by index, `Pair` lexicographically, every `Plain` before
/// every `Pair`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexId {
    Plain(usize),
    Pair(usize, usize),
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Plain(i) => write!(f, "{i}"),
            VertexId::Pair(i, j) => write!(f, "({i},{j})"),
        }
    }
}

/// Unordered vertex pair stored as `(min, max)`.
pub type EdgeKey = (VertexId, VertexId);

fn edge_key(u: VertexId, v: VertexId) -> EdgeKey {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A loopless multigraph: an ordered vertex set and a positive multiplicity for
/// every adjacent pair. Iteration is in key order, so everything built on top
/// of it is reproducible.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiGraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeKey, u32>,
}

impl MultiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices<I: IntoIterator<Item = VertexId>>(vertices: I) -> Self {
        MultiGraph {
            vertices: vertices.into_iter().collect(),
            edges: BTreeMap::new(),
        }
    }

    /// `lambda K_n` on `Plain(0..n)`.
    pub fn complete(n: usize, lambda: u32) -> Self {
        let mut g = Self::with_vertices((0..n).map(VertexId::Plain));
        if lambda == 0 {
            return g;
        }
        for i in 0..n {
            for j in i + 1..n {
                g.edges.insert((VertexId::Plain(i), VertexId::Plain(j)), lambda);
            }
        }
        g
    }

    /// `lambda K_{m,n}` with parts `Plain(0..m)` and `Plain(m..m+n)`.
    pub fn complete_bipartite(m: usize, n: usize, lambda: u32) -> Self {
        let mut g = Self::with_vertices((0..m + n).map(VertexId::Plain));
        if lambda == 0 {
            return g;
        }
        for i in 0..m {
            for j in m..m + n {
                g.edges.insert((VertexId::Plain(i), VertexId::Plain(j)), lambda);
            }
        }
        g
    }

    /// `lambda L(K_{m,n})`, i.e. `lambda (K_m □ K_n)` on the `Pair(i, j)` grid.
    pub fn line_graph_kmn(m: usize, n: usize, lambda: u32) -> Self {
        let mut g = Self::with_vertices((0..m).flat_map(|i| (0..n).map(move |j| VertexId::Pair(i, j))));
        if lambda == 0 {
            return g;
        }
        for i in 0..m {
            for j in 0..n {
                let u = VertexId::Pair(i, j);
                for j2 in j + 1..n {
                    g.edges.insert((u, VertexId::Pair(i, j2)), lambda);
                }
                for i2 in i + 1..m {
                    g.edges.insert((u, VertexId::Pair(i2, j)), lambda);
                }
            }
        }
        g
    }

    pub fn add_vertex(&mut self, v: VertexId) -> bool {
        self.vertices.insert(v)
    }

    /// Adds `count` parallel edges between `u` and `v`, inserting missing
    /// endpoints.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId, count: u32) -> Result<()> {
        if u == v {
            return Err(Error::Loop(u));
        }
        self.vertices.insert(u);
        self.vertices.insert(v);
        if count > 0 {
            *self.edges.entry(edge_key(u, v)).or_insert(0) += count;
        }
        Ok(())
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Distinct adjacent pairs with their multiplicities, in key order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, u32)> + '_ {
        self.edges.iter().map(|(&(u, v), &c)| (u, v, c))
    }

    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> u32 {
        self.edges.get(&edge_key(u, v)).copied().unwrap_or(0)
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> u64 {
        self.edges.values().map(|&c| u64::from(c)).sum()
    }

    /// Number of distinct adjacent pairs.
    pub fn pair_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> BTreeMap<VertexId, u64> {
        let mut deg: BTreeMap<VertexId, u64> = self.vertices.iter().map(|&v| (v, 0)).collect();
        for (&(u, v), &c) in &self.edges {
            *deg.entry(u).or_insert(0) += u64::from(c);
            *deg.entry(v).or_insert(0) += u64::from(c);
        }
        deg
    }

    pub fn degree(&self, v: VertexId) -> u64 {
        self.edges
            .iter()
            .filter(|(&(a, b), _)| a == v || b == v)
            .map(|(_, &c)| u64::from(c))
            .sum()
    }

    /// Multiplies every multiplicity by `t`.
    pub fn scaled(&self, t: u32) -> MultiGraph {
        MultiGraph {
            vertices: self.vertices.clone(),
            edges: if t == 0 {
                BTreeMap::new()
            } else {
                self.edges.iter().map(|(&k, &c)| (k, c * t)).collect()
            },
        }
    }

    /// Multiset sum: vertex sets are unioned, multiplicities added.
    pub fn edge_sum(&self, other: &MultiGraph) -> MultiGraph {
        let mut out = self.clone();
        out.vertices.extend(other.vertices.iter().copied());
        for (&k, &c) in &other.edges {
            *out.edges.entry(k).or_insert(0) += c;
        }
        out
    }

    /// Removes the edge multiset of `removed`; vertices are kept.
    pub fn remove_edges(&self, removed: &MultiGraph) -> Result<MultiGraph> {
        let mut out = self.clone();
        for (&(u, v), &c) in &removed.edges {
            let available = out.edges.get(&(u, v)).copied().unwrap_or(0);
            if available < c {
                return Err(Error::Underflow {
                    u,
                    v,
                    count: c,
                    available,
                });
            }
            if available == c {
                out.edges.remove(&(u, v));
            } else {
                out.edges.insert((u, v), available - c);
            }
        }
        Ok(out)
    }

    pub fn induced_subgraph<I: IntoIterator<Item = VertexId>>(&self, s: I) -> Result<MultiGraph> {
        let keep: BTreeSet<VertexId> = s.into_iter().collect();
        if let Some(&v) = keep.iter().find(|v| !self.vertices.contains(v)) {
            return Err(Error::UnknownVertex(v));
        }
        let edges = self
            .edges
            .iter()
            .filter(|(&(u, v), _)| keep.contains(&u) && keep.contains(&v))
            .map(|(&k, &c)| (k, c))
            .collect();
        Ok(MultiGraph {
            vertices: keep,
            edges,
        })
    }

    /// Image of the graph under `f`, which must be injective on the vertices.
    pub fn relabel<F: FnMut(VertexId) -> VertexId>(&self, mut f: F) -> Result<MultiGraph> {
        let mut image = BTreeMap::new();
        let mut seen = BTreeSet::new();
        for &v in &self.vertices {
            let w = f(v);
            if !seen.insert(w) {
                return Err(Error::NonInjective(w));
            }
            image.insert(v, w);
        }
        let mut out = MultiGraph::with_vertices(seen);
        for (&(u, v), &c) in &self.edges {
            out.edges.insert(edge_key(image[&u], image[&v]), c);
        }
        Ok(out)
    }

    /// `G ∨ K_1` with `lambda` parallel edges from `apex` to every vertex.
    pub fn join_with_apex(&self, apex: VertexId, lambda: u32) -> Result<MultiGraph> {
        if self.vertices.contains(&apex) {
            return Err(Error::DuplicateVertex(apex));
        }
        let mut out = self.clone();
        out.vertices.insert(apex);
        if lambda > 0 {
            for &v in &self.vertices {
                out.edges.insert(edge_key(apex, v), lambda);
            }
        }
        Ok(out)
    }
}

/// A 4-cycle `(v1, v2, v3, v4)` on distinct vertices, stored with `v1` the
/// minimum and `v2 < v4`, so equal cycles compare equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FourCycle([VertexId; 4]);

impl FourCycle {
    pub fn new(a: VertexId, b: VertexId, c: VertexId, d: VertexId) -> Result<Self> {
        let v = [a, b, c, d];
        for i in 0..4 {
            for j in i + 1..4 {
                if v[i] == v[j] {
                    return Err(Error::InvalidCycle(format!(
                        "({a}, {b}, {c}, {d}) repeats vertex {}",
                        v[i]
                    )));
                }
            }
        }
        let start = (0..4).min_by_key(|&i| v[i]).unwrap_or(0);
        let next = v[(start + 1) % 4];
        let prev = v[(start + 3) % 4];
        let rotated = if next < prev {
            [v[start], next, v[(start + 2) % 4], prev]
        } else {
            [v[start], prev, v[(start + 2) % 4], next]
        };
        Ok(FourCycle(rotated))
    }

    pub fn from_array(v: [VertexId; 4]) -> Result<Self> {
        Self::new(v[0], v[1], v[2], v[3])
    }

    pub fn vertices(&self) -> [VertexId; 4] {
        self.0
    }

    /// The four edges `v1v2, v2v3, v3v4, v4v1`, each as `(min, max)`.
    pub fn edges(&self) -> [EdgeKey; 4] {
        let v = self.0;
        [
            edge_key(v[0], v[1]),
            edge_key(v[1], v[2]),
            edge_key(v[2], v[3]),
            edge_key(v[3], v[0]),
        ]
    }

    pub fn relabel<F: FnMut(VertexId) -> VertexId>(&self, mut f: F) -> Result<Self> {
        let v = self.0;
        Self::new(f(v[0]), f(v[1]), f(v[2]), f(v[3]))
    }

    /// Edges whose `Pair` endpoints share a row.
    pub fn horizontal_edge_count(&self) -> usize {
        self.edges()
            .iter()
            .filter(|(u, v)| matches!((u, v), (VertexId::Pair(a, _), VertexId::Pair(b, _)) if a == b))
            .count()
    }

    pub fn edge_graph(&self) -> MultiGraph {
        let mut g = MultiGraph::with_vertices(self.0);
        for (u, v) in self.edges() {
            *g.edges.entry((u, v)).or_insert(0) += 1;
        }
        g
    }
}

impl fmt::Display for FourCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.0;
        write!(f, "({}, {}, {}, {})", v[0], v[1], v[2], v[3])
    }
}

/// An ordered list of 4-cycles meant to cover a target multigraph exactly.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Decomposition {
    cycles: Vec<FourCycle>,
}

impl Decomposition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn push(&mut self, c: FourCycle) {
        self.cycles.push(c);
    }

    pub fn append(&mut self, other: Decomposition) {
        self.cycles.extend(other.cycles);
    }

    pub fn cycles(&self) -> &[FourCycle] {
        &self.cycles
    }

    pub fn iter(&self) -> std::slice::Iter<'_, FourCycle> {
        self.cycles.iter()
    }

    pub fn into_cycles(self) -> Vec<FourCycle> {
        self.cycles
    }

    /// `t` back-to-back copies of the cycle list.
    pub fn replicate(&self, t: usize) -> Decomposition {
        let mut cycles = Vec::with_capacity(self.cycles.len() * t);
        for _ in 0..t {
            cycles.extend_from_slice(&self.cycles);
        }
        Decomposition { cycles }
    }

    pub fn relabel<F: FnMut(VertexId) -> VertexId>(&self, mut f: F) -> Result<Decomposition> {
        self.cycles
            .iter()
            .map(|c| c.relabel(&mut f))
            .collect::<Result<Vec<_>>>()
            .map(Decomposition::from)
    }

    /// Multiset sum of the cycles' edges.
    pub fn edge_graph(&self) -> MultiGraph {
        let mut g = MultiGraph::new();
        for c in &self.cycles {
            g.vertices.extend(c.0);
            for k in c.edges() {
                *g.edges.entry(k).or_insert(0) += 1;
            }
        }
        g
    }
}

impl From<Vec<FourCycle>> for Decomposition {
    fn from(cycles: Vec<FourCycle>) -> Self {
        Decomposition { cycles }
    }
}

impl FromIterator<FourCycle> for Decomposition {
    fn from_iter<I: IntoIterator<Item = FourCycle>>(iter: I) -> Self {
        Decomposition {
            cycles: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a Decomposition {
    type Item = &'a FourCycle;
    type IntoIter = std::slice::Iter<'a, FourCycle>;

    fn into_iter(self) -> Self::IntoIter {
        self.cycles.iter()
    }
}

/// Outcome of checking a decomposition against a target graph. Only the first
/// discrepancy is reported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyReport {
    Ok,
    /// Cycle `index` uses a vertex outside the target graph.
    BadCycle {
        index: usize,
        reason: String,
    },
    /// Cycle `index` uses edge `u-v` more often than the target provides.
    ExcessEdge {
        index: usize,
        u: VertexId,
        v: VertexId,
    },
    /// After all cycles, `u-v` still has `remaining` uncovered copies.
    MissingEdge {
        u: VertexId,
        v: VertexId,
        remaining: u32,
    },
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        matches!(self, VerifyReport::Ok)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyReport::Ok => write!(f, "OK"),
            VerifyReport::BadCycle { index, reason } => write!(f, "bad cycle #{index}: {reason}"),
            VerifyReport::ExcessEdge { index, u, v } => {
                write!(f, "excess edge {u}-{v} in cycle #{index}")
            }
            VerifyReport::MissingEdge { u, v, remaining } => {
                write!(f, "missing edge {u}-{v} ({remaining} uncovered)")
            }
        }
    }
}

/// Checks that the cycles of `d` use exactly the edge multiset of `g`.
pub fn verify_decomposition(g: &MultiGraph, d: &Decomposition) -> VerifyReport {
    let mut residual = g.edges.clone();
    for (index, c) in d.cycles.iter().enumerate() {
        if let Some(v) = c.0.iter().find(|v| !g.vertices.contains(v)) {
            return VerifyReport::BadCycle {
                index,
                reason: format!("vertex {v} is not in the graph"),
            };
        }
        for (u, v) in c.edges() {
            match residual.get_mut(&(u, v)) {
                Some(r) if *r > 0 => *r -= 1,
                _ => return VerifyReport::ExcessEdge { index, u, v },
            }
        }
    }
    match residual.into_iter().find(|&(_, r)| r > 0) {
        Some(((u, v), remaining)) => VerifyReport::MissingEdge { u, v, remaining },
        None => VerifyReport::Ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use VertexId::{Pair, Plain};

    fn cyc(v: [(usize, usize); 4]) -> FourCycle {
        FourCycle::new(
            Pair(v[0].0, v[0].1),
            Pair(v[1].0, v[1].1),
            Pair(v[2].0, v[2].1),
            Pair(v[3].0, v[3].1),
        )
        .unwrap()
    }

    #[test]
    fn complete_graph_counts() {
        assert_eq!(MultiGraph::complete(3, 1).edge_count(), 3);
        let k5 = MultiGraph::complete(5, 2);
        assert_eq!(k5.edge_count(), 20);
        assert!(k5.degrees().values().all(|&d| d == 8));
        let k1 = MultiGraph::complete(1, 7);
        assert_eq!((k1.vertex_count(), k1.edge_count()), (1, 0));
    }

    #[test]
    fn complete_bipartite_counts() {
        let c4 = MultiGraph::complete_bipartite(2, 2, 1);
        assert_eq!(c4.edge_count(), 4);
        assert_eq!(c4.multiplicity(Plain(0), Plain(1)), 0);
        assert_eq!(MultiGraph::complete_bipartite(3, 4, 2).edge_count(), 24);
        let k11 = MultiGraph::complete_bipartite(1, 1, 3);
        assert_eq!(k11.pair_count(), 1);
        assert_eq!(k11.multiplicity(Plain(0), Plain(1)), 3);
    }

    #[test]
    fn line_graph_counts() {
        let g = MultiGraph::line_graph_kmn(2, 2, 1);
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
        let d: Decomposition = vec![cyc([(0, 0), (0, 1), (1, 1), (1, 0)])].into();
        assert!(verify_decomposition(&g, &d).is_ok());
        assert_eq!(MultiGraph::line_graph_kmn(3, 4, 2).edge_count(), 60);
        let g = MultiGraph::line_graph_kmn(2, 5, 8);
        assert_eq!((g.vertex_count(), g.edge_count()), (10, 200));
        assert!(g.degrees().values().all(|&d| d == 40));
    }

    #[test]
    fn edge_sum_examples() {
        let k3 = MultiGraph::complete(3, 1);
        assert_eq!(k3.edge_sum(&k3), MultiGraph::complete(3, 2));
        let star = MultiGraph::complete_bipartite(1, 2, 1);
        assert_eq!(star.edge_sum(&MultiGraph::new()), star);
    }

    #[test]
    fn remove_edges_examples() {
        let c4 = MultiGraph::complete_bipartite(2, 2, 1);
        let mut one = MultiGraph::new();
        one.add_edge(Plain(0), Plain(2), 1).unwrap();
        let path = c4.remove_edges(&one).unwrap();
        assert_eq!(path.edge_count(), 3);
        assert_eq!(path.vertex_count(), 4);

        let k9 = MultiGraph::complete(9, 1);
        let mut c8 = MultiGraph::new();
        for i in 0..8 {
            c8.add_edge(Plain(i), Plain((i + 1) % 8), 1).unwrap();
        }
        assert_eq!(k9.remove_edges(&c8).unwrap().edge_count(), 28);

        let k3 = MultiGraph::complete(3, 1);
        let mut twice = MultiGraph::new();
        twice.add_edge(Plain(0), Plain(1), 2).unwrap();
        assert!(matches!(k3.remove_edges(&twice), Err(Error::Underflow { .. })));
    }

    #[test]
    fn induced_rows_and_columns_are_cliques() {
        let g = MultiGraph::line_graph_kmn(3, 4, 2);
        let row = g.induced_subgraph((0..4).map(|j| Pair(1, j))).unwrap();
        let k4 = MultiGraph::complete(4, 2).relabel(|v| match v {
            Plain(j) => Pair(1, j),
            p => p,
        });
        assert_eq!(row, k4.unwrap());
        let col = g.induced_subgraph((0..3).map(|i| Pair(i, 2))).unwrap();
        assert_eq!(col.edge_count(), 6);
        assert_eq!(col.pair_count(), 3);
        let single = g.induced_subgraph([Pair(0, 0)]).unwrap();
        assert_eq!(single.edge_count(), 0);
        assert!(matches!(
            g.induced_subgraph([Pair(5, 5)]),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn relabel_examples() {
        let g = MultiGraph::line_graph_kmn(3, 5, 2);
        assert_eq!(g.relabel(|v| v).unwrap(), g);
        let t = g
            .relabel(|v| match v {
                Pair(i, j) => Pair(j, i),
                p => p,
            })
            .unwrap();
        assert_eq!(t, MultiGraph::line_graph_kmn(5, 3, 2));
        let embedded = MultiGraph::complete(3, 2)
            .relabel(|v| match v {
                Plain(i) => Pair(i, 0),
                p => p,
            })
            .unwrap();
        assert_eq!(embedded, g.induced_subgraph((0..3).map(|i| Pair(i, 0))).unwrap());
        assert!(matches!(g.relabel(|_| Plain(0)), Err(Error::NonInjective(_))));
    }

    #[test]
    fn join_with_apex_examples() {
        let empty3 = MultiGraph::with_vertices((0..3).map(Plain));
        let star = empty3.join_with_apex(Plain(3), 1).unwrap();
        assert_eq!(
            star,
            MultiGraph::complete_bipartite(1, 3, 1)
                .relabel(|v| match v {
                    Plain(0) => Plain(3),
                    Plain(i) => Plain(i - 1),
                    p => p,
                })
                .unwrap()
        );

        // K_8 minus four edge-disjoint perfect matchings, joined to an apex.
        let mut matchings = MultiGraph::new();
        for e in [1usize, 2, 4, 7] {
            for v in 0..8usize {
                if v < v ^ e {
                    matchings.add_edge(Plain(v), Plain(v ^ e), 1).unwrap();
                }
            }
        }
        let residual = MultiGraph::complete(8, 1).remove_edges(&matchings).unwrap();
        let joined = residual.join_with_apex(Plain(8), 1).unwrap();
        assert_eq!((joined.vertex_count(), joined.edge_count()), (9, 20));

        let c4 = MultiGraph::complete_bipartite(2, 2, 1);
        let wheel = c4.join_with_apex(Plain(9), 2).unwrap();
        let degs: Vec<u64> = wheel.degrees().values().copied().collect();
        assert_eq!(degs, vec![4, 4, 4, 4, 8]);
        assert!(matches!(
            c4.join_with_apex(Plain(0), 1),
            Err(Error::DuplicateVertex(_))
        ));
    }

    #[test]
    fn canonical_four_cycle() {
        let c = FourCycle::new(Plain(3), Plain(1), Plain(2), Plain(0)).unwrap();
        assert_eq!(c.vertices(), [Plain(0), Plain(2), Plain(1), Plain(3)]);
        let same = FourCycle::new(Plain(1), Plain(3), Plain(0), Plain(2)).unwrap();
        assert_eq!(c, same);
        assert!(FourCycle::new(Plain(1), Plain(2), Plain(1), Plain(3)).is_err());
        assert!(Plain(100) < Pair(0, 0));
    }

    #[test]
    fn verify_reports_discrepancies() {
        let g = MultiGraph::line_graph_kmn(2, 2, 1);
        let c = cyc([(0, 0), (0, 1), (1, 1), (1, 0)]);
        let twice: Decomposition = vec![c, c].into();
        assert!(matches!(
            verify_decomposition(&g, &twice),
            VerifyReport::ExcessEdge { index: 1, .. }
        ));
        assert!(matches!(
            verify_decomposition(&g, &Decomposition::new()),
            VerifyReport::MissingEdge { remaining: 1, .. }
        ));
        let outside: Decomposition = vec![cyc([(0, 0), (0, 1), (2, 1), (2, 0)])].into();
        assert!(matches!(
            verify_decomposition(&g, &outside),
            VerifyReport::BadCycle { index: 0, .. }
        ));
    }
}
