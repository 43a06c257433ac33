use super::{place, shift, LineDecomposition};
use crate::blocks::{
    c4_of_even_even_product, c4_of_lambda_complete, c4_of_lambda_complete_bipartite, walecki_hamilton,
    BlockCache, BlockKey,
};
use crate::error::{Error, Result};
use crate::multigraph::{Decomposition, FourCycle, VertexId::Pair};

type Cell = (usize, usize);

fn grid_cycle(c: [Cell; 4]) -> Result<FourCycle> {
    FourCycle::from_array(c.map(|(i, j)| Pair(i, j)))
}

const TWO_FOLD_3X4: [[Cell; 4]; 15] = [
    [(0, 0), (0, 1), (1, 1), (1, 0)],
    [(0, 0), (0, 2), (1, 2), (1, 0)],
    [(0, 2), (0, 3), (1, 3), (1, 2)],
    [(0, 1), (0, 3), (1, 3), (1, 1)],
    [(1, 0), (1, 2), (2, 2), (2, 0)],
    [(1, 0), (1, 3), (2, 3), (2, 0)],
    [(1, 1), (1, 2), (2, 2), (2, 1)],
    [(1, 1), (1, 3), (2, 3), (2, 1)],
    [(0, 0), (0, 1), (2, 1), (2, 0)],
    [(0, 0), (0, 3), (2, 3), (2, 0)],
    [(0, 1), (0, 2), (2, 2), (2, 1)],
    [(0, 2), (0, 3), (2, 3), (2, 2)],
    [(0, 0), (0, 2), (0, 1), (0, 3)],
    [(1, 0), (1, 1), (1, 2), (1, 3)],
    [(2, 0), (2, 1), (2, 3), (2, 2)],
];

// K_5 plus the doubled distance-2 cycle, on the columns of one row
const FIRST_ROW_3X5: [[usize; 4]; 5] = [
    [0, 2, 4, 1],
    [1, 3, 0, 2],
    [2, 4, 1, 3],
    [0, 2, 4, 3],
    [0, 3, 1, 4],
];

/// Starts at the smallest vertex and heads toward its smaller neighbour.
fn orient(mut c: Vec<usize>) -> Vec<usize> {
    let start = c
        .iter()
        .enumerate()
        .min_by_key(|&(_, v)| *v)
        .map(|(i, _)| i)
        .unwrap_or(0);
    c.rotate_left(start);
    if c.len() > 2 && c[1] > c[c.len() - 1] {
        c[1..].reverse();
    }
    c
}

fn arcs(c: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..c.len()).map(move |i| (c[i], c[(i + 1) % c.len()]))
}

/// `2L(K_{n,n})` for odd `n >= 3` from the product of oriented Hamilton
/// cycles: arcs `(a, b)` and `(x, y)` of the `u`-th cycles on the two sides
/// give `((a,x), (b,x), (b,y), (a,y))`.
pub fn two_fold_square(n: usize) -> Result<LineDecomposition> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenOrder(n));
    }
    let cycles: Vec<Vec<usize>> = walecki_hamilton(n)?.into_iter().map(orient).collect();
    let mut d = Decomposition::new();
    for c in &cycles {
        for (a, b) in arcs(c) {
            for (x, y) in arcs(c) {
                d.push(grid_cycle([(a, x), (b, x), (b, y), (a, y)])?);
            }
        }
    }
    LineDecomposition::assemble(n, n, 2, d)
}

/// `2L(K_{3,4})`, fifteen explicit cycles.
pub fn two_fold_3x4() -> Result<LineDecomposition> {
    let d = TWO_FOLD_3X4
        .iter()
        .map(|&c| grid_cycle(c))
        .collect::<Result<Decomposition>>()?;
    LineDecomposition::assemble(3, 4, 2, d)
}

/// `2L(K_{3,7})`: `2L(K_{3,4})` on columns 0..4, `2L(K_{3,3})` on columns
/// 4..7 and `2K_{4,3}` between the two column groups in each row.
pub fn two_fold_3x7() -> Result<LineDecomposition> {
    let mut d = two_fold_3x4()?.into_decomposition();
    d.append(shift(two_fold_square(3)?.decomposition(), 0, 4));
    let across = c4_of_lambda_complete_bipartite(4, 3, 2)?;
    for row in 0..3 {
        d.append(place(&across, |k| (row, k))?);
    }
    LineDecomposition::assemble(3, 7, 2, d)
}

/// `4L(K_{3,5})`: thirty rotational mixed cycles, then what is left in each
/// row. Row 0 is `K_5` plus twice the distance-2 cycle, row 2 is its image
/// under `j -> 2j`, row 1 is `2K_5`.
pub fn four_fold_3x5() -> Result<LineDecomposition> {
    let mut d = Decomposition::new();
    for i in 0..5 {
        let (i1, i2) = ((i + 1) % 5, (i + 2) % 5);
        let c1 = grid_cycle([(0, i), (0, i1), (1, i1), (1, i)])?;
        let c2 = grid_cycle([(1, i), (1, i2), (2, i2), (2, i)])?;
        d.push(c1);
        d.push(c1);
        d.push(c2);
        d.push(c2);
        d.push(grid_cycle([(0, i), (0, i1), (2, i1), (2, i)])?);
        d.push(grid_cycle([(0, i), (0, i2), (2, i2), (2, i)])?);
    }
    for c in FIRST_ROW_3X5 {
        d.push(grid_cycle(c.map(|j| (0, j)))?);
        d.push(grid_cycle(c.map(|j| (2, 2 * j % 5)))?);
    }
    d.append(place(&c4_of_lambda_complete(5, 2)?, |k| (1, k))?);
    LineDecomposition::assemble(3, 5, 4, d)
}

/// `8L(K_{2,n})` for odd `n >= 5`.
///
/// For `n = 5`: twenty rotational mixed cycles and `6K_5` in each row. For
/// larger `n`: `8L(K_{2,5})` on the first five columns, `8L(K_{2,n-5})` by the
/// even product on the rest, and `8K_{5,n-5}` in each row.
pub fn eight_fold_two_row(n: usize) -> Result<LineDecomposition> {
    if n.is_multiple_of(2) || n < 5 {
        return Err(Error::EvenOrValue(n));
    }
    let mut d = Decomposition::new();
    if n == 5 {
        for i in 0..5 {
            for step in [1, 2] {
                let c = grid_cycle([(0, i), (0, (i + step) % 5), (1, (i + step) % 5), (1, i)])?;
                d.push(c);
                d.push(c);
            }
        }
        let rest = c4_of_lambda_complete(5, 6)?;
        for row in 0..2 {
            d.append(place(&rest, |k| (row, k))?);
        }
    } else {
        d.append(eight_fold_two_row(5)?.into_decomposition());
        let tail = c4_of_even_even_product(2, n - 5)?.replicate(8);
        d.append(shift(&tail, 0, 5));
        let across = c4_of_lambda_complete_bipartite(5, n - 5, 8)?;
        for row in 0..2 {
            d.append(place(&across, |k| (row, k))?);
        }
    }
    LineDecomposition::assemble(2, n, 8, d)
}

/// `4L(K_{3,6})`: two copies of `4L(K_{3,3})` side by side and `4K_{3,3}`
/// between them in each row.
pub fn four_fold_3x6() -> Result<LineDecomposition> {
    let square = two_fold_square(3)?.replicate(2).into_decomposition();
    let mut d = square.clone();
    d.append(shift(&square, 0, 3));
    let across = c4_of_lambda_complete_bipartite(3, 3, 4)?;
    for row in 0..3 {
        d.append(place(&across, |k| (row, k))?);
    }
    LineDecomposition::assemble(3, 6, 4, d)
}

/// `4L(K_{3,9})`: `4L(K_{3,3})`, `4L(K_{3,6})` and `4K_{3,6}` in each row.
pub fn four_fold_3x9() -> Result<LineDecomposition> {
    let mut d = two_fold_square(3)?.replicate(2).into_decomposition();
    d.append(shift(four_fold_3x6()?.decomposition(), 0, 3));
    let across = c4_of_lambda_complete_bipartite(3, 6, 4)?;
    for row in 0..3 {
        d.append(place(&across, |k| (row, k))?);
    }
    LineDecomposition::assemble(3, 9, 4, d)
}

/// `lambda L(K_{1,n}) = lambda K_n` laid out as a single row.
pub fn complete_row(n: usize, lambda: u32) -> Result<LineDecomposition> {
    let d = place(&c4_of_lambda_complete(n, lambda)?, |k| (0, k))?;
    LineDecomposition::assemble(1, n, lambda, d)
}

/// `L(K_{m,n})` for even `m, n`.
pub fn even_even(m: usize, n: usize) -> Result<LineDecomposition> {
    LineDecomposition::assemble(m, n, 1, c4_of_even_even_product(m, n)?)
}

/// `lambda L(K_{m,n})` found by the solver and kept in `cache`.
pub fn line_graph_seed(m: usize, n: usize, lambda: u32, cache: &BlockCache) -> Result<LineDecomposition> {
    let d = cache.get_or_solve(&BlockKey::LineGraph { m, n, lambda })?;
    LineDecomposition::assemble(m, n, lambda, d)
}
