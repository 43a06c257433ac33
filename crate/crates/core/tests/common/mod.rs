//! Edge-count checker written independently of the library's verifier.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;

use c4line::multigraph::{Decomposition, VertexId};

/// Checks that `cycles` are 4-cycles on `vertices` that use every pair
/// `{u, v}` exactly `mult(u, v)` times.
pub fn covers<T, F>(cycles: &[[T; 4]], vertices: &[T], mult: F) -> Result<(), String>
where
    T: Copy + Ord + Hash + std::fmt::Debug,
    F: Fn(T, T) -> u32,
{
    let known: BTreeSet<T> = vertices.iter().copied().collect();
    let mut used: HashMap<(T, T), u32> = HashMap::new();
    for (k, c) in cycles.iter().enumerate() {
        let distinct: BTreeSet<T> = c.iter().copied().collect();
        if distinct.len() != 4 {
            return Err(format!("cycle {k} {c:?} repeats a vertex"));
        }
        if let Some(v) = c.iter().find(|v| !known.contains(v)) {
            return Err(format!("cycle {k} uses unknown vertex {v:?}"));
        }
        for i in 0..4 {
            let (a, b) = (c[i], c[(i + 1) % 4]);
            *used.entry((a.min(b), a.max(b))).or_default() += 1;
        }
    }
    let verts: Vec<T> = known.into_iter().collect();
    let mut expected_pairs = 0;
    for (i, &u) in verts.iter().enumerate() {
        for &v in &verts[i + 1..] {
            let want = mult(u, v);
            let got = used.get(&(u, v)).copied().unwrap_or(0);
            if want != got {
                return Err(format!("pair {u:?}-{v:?} covered {got} times, expected {want}"));
            }
            if want > 0 {
                expected_pairs += 1;
            }
        }
    }
    if used.len() != expected_pairs {
        return Err("cycles use pairs outside the graph".into());
    }
    Ok(())
}

pub fn grid(m: usize, n: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
}

/// `lambda` when the cells share exactly one coordinate.
pub fn rook(lambda: u32) -> impl Fn((usize, usize), (usize, usize)) -> u32 {
    move |a, b| if (a.0 == b.0) != (a.1 == b.1) { lambda } else { 0 }
}

pub fn pair_cycles(d: &Decomposition) -> Vec<[(usize, usize); 4]> {
    d.iter()
        .map(|c| {
            c.vertices().map(|v| match v {
                VertexId::Pair(i, j) => (i, j),
                other => panic!("unexpected vertex {other}"),
            })
        })
        .collect()
}

pub fn plain_cycles(d: &Decomposition) -> Vec<[usize; 4]> {
    d.iter()
        .map(|c| {
            c.vertices().map(|v| match v {
                VertexId::Plain(k) => k,
                other => panic!("unexpected vertex {other}"),
            })
        })
        .collect()
}

/// Checks a decomposition of `lambda L(K_{m,n})`.
pub fn covers_line_graph(d: &Decomposition, m: usize, n: usize, lambda: u32) -> Result<(), String> {
    covers(&pair_cycles(d), &grid(m, n), rook(lambda))
}

/// `lambda m n (m + n - 2) / 8`, computed from the edge count.
pub fn expected_cycles(m: usize, n: usize, lambda: u32) -> u64 {
    let (m, n, l) = (m as u64, n as u64, u64::from(lambda));
    let horizontal = m * n * (n - 1) / 2;
    let vertical = n * m * (m - 1) / 2;
    l * (horizontal + vertical) / 4
}
