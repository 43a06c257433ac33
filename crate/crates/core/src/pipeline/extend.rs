use std::collections::BTreeMap;

use super::bases::{complete_row, even_even, two_fold_3x4};
use super::{place, shift, LineDecomposition};
use crate::blocks::{
    c4_of_complete_minus_2factor, c4_of_lambda_complete, c4_of_lambda_complete_bipartite, sehgal_one_factors,
    BlockCache,
};
use crate::error::{Error, Result};
use crate::multigraph::{Decomposition, FourCycle, VertexId::Pair, VertexId::Plain};

/// Adds `4a` rows to a decomposition of `lambda L(K_{m,n})`, `lambda` in
/// `{2, 4}` and `n >= 4` (with `4 | n` when `lambda = 2`).
///
/// New rows get `lambda K_n`. Each column gets `lambda K_{4a+1}` on row 0
/// and the new rows when `m = 1`, otherwise `lambda K_{4a}` on the new rows
/// plus `lambda K_{m,4a}` between old and new rows.
pub fn extend_rows_by_four(base: &LineDecomposition, a: usize) -> Result<LineDecomposition> {
    let p = base.params();
    let (m, n, lambda) = (p.m, p.n, p.lambda);
    if a == 0 {
        return Err(Error::Precondition("row extension needs a >= 1".into()));
    }
    if lambda != 2 && lambda != 4 {
        return Err(Error::Precondition(format!(
            "adding rows four at a time needs lambda 2 or 4, got {lambda}"
        )));
    }
    if n < 4 || (lambda == 2 && n % 4 != 0) {
        return Err(Error::Precondition(format!(
            "adding rows four at a time to {lambda}L(K_{{{m},{n}}}) needs n >= 4{}",
            if lambda == 2 { " divisible by 4" } else { "" }
        )));
    }
    let rows = m + 4 * a;
    let mut d = base.decomposition().clone();
    let row_block = c4_of_lambda_complete(n, lambda)?;
    for i in m..rows {
        d.append(place(&row_block, |k| (i, k))?);
    }
    if m == 1 {
        let column = c4_of_lambda_complete(4 * a + 1, lambda)?;
        for j in 0..n {
            d.append(place(&column, |k| (k, j))?);
        }
    } else {
        let column = c4_of_lambda_complete(4 * a, lambda)?;
        let across = c4_of_lambda_complete_bipartite(m, 4 * a, lambda)?;
        for j in 0..n {
            d.append(place(&column, |k| (m + k, j))?);
            d.append(place(&across, |k| (k, j))?);
        }
    }
    LineDecomposition::assemble(rows, n, lambda, d)
}

// lambda L(K_{rows,4}) for the column extension
fn four_column_strip(rows: usize, lambda: u32) -> Result<LineDecomposition> {
    if rows.is_multiple_of(2) {
        return Ok(even_even(rows, 4)?.replicate(lambda));
    }
    let (start, first) = if rows % 4 == 3 {
        if !lambda.is_multiple_of(2) {
            return Err(Error::Precondition(format!(
                "no {lambda}L(K_{{{rows},4}}) strip for odd lambda"
            )));
        }
        (3, two_fold_3x4()?.replicate(lambda / 2))
    } else {
        (1, complete_row(4, lambda)?)
    };
    if rows == start {
        Ok(first)
    } else {
        extend_rows_by_four(&first, (rows - start) / 4)
    }
}

/// Adds `4k` columns: each step appends `lambda L(K_{m,4})` on the new
/// columns and `lambda K_{c,4}` between the old `c` columns and the new ones
/// in every row.
pub fn extend_columns_by_four(base: &LineDecomposition, k: usize) -> Result<LineDecomposition> {
    let p = base.params();
    if k == 0 {
        return Err(Error::Precondition("column extension needs k >= 1".into()));
    }
    let strip = four_column_strip(p.m, p.lambda)?;
    let mut d = base.decomposition().clone();
    let mut cols = p.n;
    for _ in 0..k {
        d.append(shift(strip.decomposition(), 0, cols));
        let across = c4_of_lambda_complete_bipartite(cols, 4, p.lambda)?;
        for row in 0..p.m {
            d.append(place(&across, |x| (row, x))?);
        }
        cols += 4;
    }
    LineDecomposition::assemble(p.m, cols, p.lambda, d)
}

/// The horizontal edges of each new row that are routed through mixed
/// cycles when adding eight rows, with the 1-factor index that pairs each
/// of them across rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeaveSpec {
    pub columns: usize,
    /// `(column, column, factor)` triples.
    pub colored_edges: Vec<(usize, usize, usize)>,
}

impl LeaveSpec {
    /// For `n ≡ 1, 3, 5, 7 (mod 8)` the leave is a cycle on the first
    /// `0, 3, 6, 5` columns; for `n = 5` it is a bowtie centred on column 4.
    pub fn for_columns(n: usize) -> Result<Self> {
        if n.is_multiple_of(2) {
            return Err(Error::Precondition(format!(
                "leave needs an odd column count, got {n}"
            )));
        }
        let colored_edges = if n == 5 {
            vec![(1, 2, 0), (3, 4, 0), (0, 3, 1), (2, 4, 1), (1, 4, 2), (0, 4, 3)]
        } else {
            let l = Self::cycle_length(n);
            (0..l)
                .map(|j| {
                    let factor = match l {
                        6 => j % 2,
                        _ if j == l - 1 => 2,
                        _ => j % 2,
                    };
                    (j, (j + 1) % l, factor)
                })
                .collect()
        };
        Ok(LeaveSpec {
            columns: n,
            colored_edges,
        })
    }

    /// Length of the leave cycle for a column count other than 5.
    pub fn cycle_length(n: usize) -> usize {
        match n % 8 {
            3 => 3,
            5 => 6,
            7 => 5,
            _ => 0,
        }
    }

    /// Sorted factor indices on leave edges at `column`.
    pub fn factors_at(&self, column: usize) -> Vec<usize> {
        let mut ks: Vec<usize> = self
            .colored_edges
            .iter()
            .filter(|&&(a, b, _)| a == column || b == column)
            .map(|&(_, _, k)| k)
            .collect();
        ks.sort_unstable();
        ks
    }

    /// Decomposition of `lambda (K_n - leave)` on `Plain(0..n)`.
    fn row_remainder(&self, lambda: u32, cache: &BlockCache) -> Result<Decomposition> {
        let n = self.columns;
        if n == 5 {
            let c = FourCycle::new(Plain(0), Plain(1), Plain(3), Plain(2))?;
            return Ok(Decomposition::from(vec![c; lambda as usize]));
        }
        match Self::cycle_length(n) {
            0 if n == 1 => Ok(Decomposition::new()),
            0 => c4_of_lambda_complete(n, lambda),
            l if l == n => Ok(Decomposition::new()),
            l => complete_minus_cycle(n, l, lambda, cache),
        }
    }
}

/// `lambda (K_n - C_l)` with the cycle on `0..l`. The smallest order in each
/// residue class comes from the solver; `K_{n+8} - C` is `(K_n - C)`, a `K_9`
/// on vertex `n - 1` and the eight new ones, and `K_{n-1,8}`.
fn complete_minus_cycle(n: usize, l: usize, lambda: u32, cache: &BlockCache) -> Result<Decomposition> {
    let smallest = match l {
        3 => 11,
        6 => 13,
        5 => 7,
        _ => return Err(Error::Precondition(format!("no leave cycle of length {l}"))),
    };
    if n < smallest || !(n - smallest).is_multiple_of(8) {
        return Err(Error::Precondition(format!(
            "K_{n} - C_{l} is outside the supported residue class"
        )));
    }
    if n == smallest {
        let cycle: Vec<(usize, usize)> = (0..l).map(|j| (j, (j + 1) % l)).collect();
        return c4_of_complete_minus_2factor(n, &cycle, lambda, cache);
    }
    let mut d = complete_minus_cycle(n - 8, l, lambda, cache)?;
    let hub = n - 9;
    let k9 = c4_of_lambda_complete(9, lambda)?;
    d.append(k9.relabel(|v| match v {
        Plain(8) => Plain(hub),
        Plain(k) => Plain(n - 8 + k),
        other => other,
    })?);
    let across = c4_of_lambda_complete_bipartite(hub, 8, lambda)?;
    d.append(across.relabel(|v| match v {
        Plain(k) if k >= hub => Plain(k + 1),
        other => other,
    })?);
    Ok(d)
}

/// Adds `8a` rows to a decomposition of `lambda L(K_{m,n})`, `m, n` odd.
///
/// The new rows are paired along four 1-factors of `K_{8a}`. In each new row
/// the leave edges are covered by mixed 4-cycles across a factor edge, the
/// rest of the row by a block. In each column, the last old row acts as the
/// apex over the new rows: the clique there minus the factors used at that
/// column decomposes explicitly, and the remaining old rows meet the new ones
/// in `lambda K_{m-1,8a}`.
pub fn extend_rows_by_eight(
    base: &LineDecomposition,
    a: usize,
    cache: &BlockCache,
) -> Result<LineDecomposition> {
    let p = base.params();
    let (m, n, lambda) = (p.m, p.n, p.lambda);
    if a == 0 {
        return Err(Error::Precondition("row extension needs a >= 1".into()));
    }
    if m % 2 == 0 || n % 2 == 0 {
        return Err(Error::Precondition(format!(
            "adding rows eight at a time needs m, n odd, got ({m}, {n})"
        )));
    }
    let new_rows = 8 * a;
    let rows = m + new_rows;
    let clique_row = |k: usize| if k == new_rows { m - 1 } else { m + k };
    let factors = sehgal_one_factors(a)?;
    let mut d = base.decomposition().clone();

    if n == 1 {
        let column = c4_of_lambda_complete(new_rows + 1, lambda)?;
        d.append(place(&column, |k| (clique_row(k), 0))?);
    } else {
        let spec = LeaveSpec::for_columns(n)?;
        let rest = spec.row_remainder(lambda, cache)?;
        for i in 0..new_rows {
            d.append(place(&rest, |k| (m + i, k))?);
        }
        for &(c0, c1, k) in &spec.colored_edges {
            for &(u, w) in factors.factor(k) {
                let c = FourCycle::new(Pair(m + u, c0), Pair(m + u, c1), Pair(m + w, c1), Pair(m + w, c0))?;
                for _ in 0..lambda {
                    d.push(c);
                }
            }
        }
        let mut blocks: BTreeMap<Vec<usize>, Decomposition> = BTreeMap::new();
        for j in 0..n {
            let used = spec.factors_at(j);
            if !blocks.contains_key(&used) {
                let block = match used.as_slice() {
                    [] => c4_of_lambda_complete(new_rows + 1, lambda)?,
                    &[x, y] => factors.complete_minus_pair(x, y)?.replicate(lambda as usize),
                    [_, _, _, _] => factors.residual().replicate(lambda as usize),
                    other => {
                        return Err(Error::Precondition(format!(
                            "column {j} carries factors {other:?}"
                        )))
                    }
                };
                blocks.insert(used.clone(), block);
            }
            d.append(place(&blocks[&used], |k| (clique_row(k), j))?);
        }
    }
    if m > 1 {
        let across = c4_of_lambda_complete_bipartite(m - 1, new_rows, lambda)?;
        let row = |k: usize| if k < m - 1 { k } else { k + 1 };
        for j in 0..n {
            d.append(place(&across, |k| (row(k), j))?);
        }
    }
    LineDecomposition::assemble(rows, n, lambda, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::{verify_decomposition, MultiGraph};
    use crate::pipeline::bases::{four_fold_3x5, two_fold_square};

    #[test]
    fn leave_lengths_and_colors() {
        assert_eq!(LeaveSpec::cycle_length(9), 0);
        assert_eq!(LeaveSpec::cycle_length(11), 3);
        assert_eq!(LeaveSpec::cycle_length(13), 6);
        assert_eq!(LeaveSpec::cycle_length(7), 5);
        let five = LeaveSpec::for_columns(7).unwrap();
        let colors: Vec<usize> = five.colored_edges.iter().map(|e| e.2).collect();
        assert_eq!(colors, vec![0, 1, 0, 1, 2]);
        let six = LeaveSpec::for_columns(13).unwrap();
        let colors: Vec<usize> = six.colored_edges.iter().map(|e| e.2).collect();
        assert_eq!(colors, vec![0, 1, 0, 1, 0, 1]);
        let three = LeaveSpec::for_columns(3).unwrap();
        assert_eq!(three.colored_edges, vec![(0, 1, 0), (1, 2, 1), (2, 0, 2)]);
    }

    #[test]
    fn residual_is_two_regular_at_leave_columns() {
        for n in [3, 7, 11, 13, 15, 21] {
            let spec = LeaveSpec::for_columns(n).unwrap();
            for j in 0..LeaveSpec::cycle_length(n) {
                let ks = spec.factors_at(j);
                assert_eq!(ks.len(), 2, "n={n} column {j}");
                assert_ne!(ks[0], ks[1]);
            }
        }
        let bowtie = LeaveSpec::for_columns(5).unwrap();
        assert_eq!(bowtie.factors_at(0), vec![1, 3]);
        assert_eq!(bowtie.factors_at(1), vec![0, 2]);
        assert_eq!(bowtie.factors_at(2), vec![0, 1]);
        assert_eq!(bowtie.factors_at(3), vec![0, 1]);
        assert_eq!(bowtie.factors_at(4), vec![0, 1, 2, 3]);
    }

    #[test]
    fn complete_minus_cycle_towers() {
        let cache = BlockCache::in_memory();
        for (n, l) in [(7, 5), (15, 5), (11, 3), (19, 3), (13, 6), (21, 6), (23, 5)] {
            let d = complete_minus_cycle(n, l, 1, &cache).unwrap();
            let mut leave = MultiGraph::new();
            for j in 0..l {
                leave.add_edge(Plain(j), Plain((j + 1) % l), 1).unwrap();
            }
            let g = MultiGraph::complete(n, 1).remove_edges(&leave).unwrap();
            assert!(verify_decomposition(&g, &d).is_ok(), "K_{n} - C_{l}");
        }
    }

    #[test]
    fn four_row_examples() {
        let k34 = two_fold_3x4().unwrap();
        assert_eq!(extend_rows_by_four(&k34, 1).unwrap().len(), 63);
        let row = complete_row(4, 2).unwrap();
        let five = extend_rows_by_four(&row, 1).unwrap();
        assert_eq!((five.params().m, five.params().n), (5, 4));
        assert_eq!(
            extend_rows_by_four(&four_fold_3x5().unwrap(), 1).unwrap().len(),
            175
        );
        let bad = two_fold_square(3).unwrap();
        assert!(matches!(
            extend_rows_by_four(&bad, 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn column_extension() {
        let k34 = two_fold_3x4().unwrap();
        let d = extend_columns_by_four(&k34, 2).unwrap();
        assert_eq!((d.params().m, d.params().n), (3, 12));
    }

    #[test]
    fn eight_row_examples() {
        let cache = BlockCache::in_memory();
        let square = two_fold_square(3).unwrap();
        assert_eq!(extend_rows_by_eight(&square, 1, &cache).unwrap().len(), 99);
        let k5 = complete_row(5, 2).unwrap();
        assert_eq!(extend_rows_by_eight(&k5, 1, &cache).unwrap().len(), 135);
        let column = complete_row(5, 4).unwrap().transpose();
        let tall = extend_rows_by_eight(&column, 1, &cache).unwrap();
        assert_eq!(tall.params(), crate::feasibility::Params::new(13, 1, 4).unwrap());
        let k7 = complete_row(7, 4).unwrap();
        assert_eq!(extend_rows_by_eight(&k7, 2, &cache).unwrap().params().m, 17);
        let k13 = complete_row(13, 2).unwrap();
        assert!(extend_rows_by_eight(&k13, 1, &cache).is_ok());
    }
}
