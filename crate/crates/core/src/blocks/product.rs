use super::{checked, infeasible};
use crate::error::Result;
use crate::multigraph::{Decomposition, FourCycle, MultiGraph, VertexId::Pair};

/// 4-cycle decomposition of `K_m □ K_n` (equivalently `L(K_{m,n})`) for even
/// `m, n`, on vertices `Pair(row, column)`.
///
/// Columns are peeled two at a time: each pair of columns spans a copy of
/// `K_m □ K_2`, and the horizontal edges between two column pairs form
/// `K_{2,2}` tiles in every row.
pub fn c4_of_even_even_product(m: usize, n: usize) -> Result<Decomposition> {
    let name = format!("K_{m} □ K_{n}");
    if m < 2 || n < 2 || m % 2 == 1 || n % 2 == 1 {
        return Err(infeasible(name, "both factors must have even order"));
    }
    let mut d = Decomposition::new();
    for p in (0..n).step_by(2) {
        ladder(m, p, p + 1, &mut d)?;
        for q in (p + 2..n).step_by(2) {
            for i in 0..m {
                d.push(FourCycle::new(
                    Pair(i, p),
                    Pair(i, q),
                    Pair(i, p + 1),
                    Pair(i, q + 1),
                )?);
            }
        }
    }
    checked(&MultiGraph::line_graph_kmn(m, n, 1), d, &name)
}

// K_m □ K_2 on columns c0, c1: a perfect matching of rows per column closes
// squares with the horizontal edges, and the rest of each column is the
// cocktail party graph on the row pairs.
fn ladder(m: usize, c0: usize, c1: usize, d: &mut Decomposition) -> Result<()> {
    for r in (0..m).step_by(2) {
        d.push(FourCycle::new(
            Pair(r, c0),
            Pair(r + 1, c0),
            Pair(r + 1, c1),
            Pair(r, c1),
        )?);
        for c in [c0, c1] {
            for s in (r + 2..m).step_by(2) {
                d.push(FourCycle::new(
                    Pair(r, c),
                    Pair(s, c),
                    Pair(r + 1, c),
                    Pair(s + 1, c),
                )?);
            }
        }
    }
    Ok(())
}
