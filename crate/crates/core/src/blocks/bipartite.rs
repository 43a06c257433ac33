use super::{checked, infeasible, plain_cycle};
use crate::error::{Error, Result};
use crate::multigraph::{Decomposition, MultiGraph};

/// 4-cycle decomposition of `lambda K_{m,n}` with parts `Plain(0..m)` and
/// `Plain(m..m+n)`.
///
/// Odd `lambda` tiles by `K_{2,2}`; even `lambda` with `mn` even rotates
/// pairs of the even side; `lambda ≡ 0 (mod 4)` with `m, n` odd uses the
/// torus family.
pub fn c4_of_lambda_complete_bipartite(m: usize, n: usize, lambda: u32) -> Result<Decomposition> {
    let name = format!("{lambda}K_{{{m},{n}}}");
    if lambda == 0 {
        return Err(Error::Precondition("lambda must be positive".into()));
    }
    if m < 2 || n < 2 {
        return Err(infeasible(name, "each part needs at least 2 vertices"));
    }
    let l = lambda as usize;
    let d = if lambda % 2 == 1 {
        if m % 2 == 1 || n % 2 == 1 {
            return Err(infeasible(name, "odd vertex degree"));
        }
        tiling(m, n)?.replicate(l)
    } else if m.is_multiple_of(2) || n.is_multiple_of(2) {
        rotation_two_fold(m, n)?.replicate(l / 2)
    } else if lambda.is_multiple_of(4) {
        torus_four_fold(m, n)?.replicate(l / 4)
    } else {
        return Err(infeasible(name, "edge count not divisible by 4"));
    };
    checked(&MultiGraph::complete_bipartite(m, n, lambda), d, &name)
}

/// `4K_{m,n}` as the cycles `(a, x, a+1, x+1)` over `Z_m × Z_n`.
pub fn torus_four_fold(m: usize, n: usize) -> Result<Decomposition> {
    if m < 2 || n < 2 {
        return Err(infeasible(
            format!("4K_{{{m},{n}}}"),
            "each part needs at least 2 vertices",
        ));
    }
    let mut d = Decomposition::new();
    for a in 0..m {
        for x in 0..n {
            d.push(plain_cycle(a, m + x, (a + 1) % m, m + (x + 1) % n)?);
        }
    }
    Ok(d)
}

fn tiling(m: usize, n: usize) -> Result<Decomposition> {
    let mut d = Decomposition::new();
    for a in (0..m).step_by(2) {
        for x in (0..n).step_by(2) {
            d.push(plain_cycle(a, m + x, a + 1, m + x + 1)?);
        }
    }
    Ok(d)
}

// 2K_{m,n}: pair up the even side, walk the other side around a circle
fn rotation_two_fold(m: usize, n: usize) -> Result<Decomposition> {
    let mut d = Decomposition::new();
    if n.is_multiple_of(2) {
        for y in (0..n).step_by(2) {
            for a in 0..m {
                d.push(plain_cycle(a, m + y, (a + 1) % m, m + y + 1)?);
            }
        }
    } else {
        for a in (0..m).step_by(2) {
            for y in 0..n {
                d.push(plain_cycle(m + y, a, m + (y + 1) % n, a + 1)?);
            }
        }
    }
    Ok(d)
}
