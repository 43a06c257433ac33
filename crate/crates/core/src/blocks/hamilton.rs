use crate::error::{Error, Result};

/// Walecki's rotational Hamilton decomposition of `K_n`, `n` odd.
///
/// Vertex `n - 1` is the fixed point; the others sit on a circle `Z_{n-1}`.
/// Cycle `k` is `∞, k, k+1, k-1, k+2, k-2, …` and the `(n-1)/2` rotations
/// partition the edges.
pub fn walecki_hamilton(n: usize) -> Result<Vec<Vec<usize>>> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenOrder(n));
    }
    if n < 3 {
        return Err(Error::Precondition(format!(
            "Hamilton decomposition needs n >= 3, got {n}"
        )));
    }
    let q = n - 1;
    let cycles = (0..q / 2)
        .map(|k| {
            let mut cycle = Vec::with_capacity(n);
            cycle.push(q);
            for step in 0..q {
                // zigzag offsets 0, +1, -1, +2, -2, ...
                let half = step.div_ceil(2);
                let offset = if step % 2 == 1 { half } else { q - half % q };
                cycle.push((k + offset) % q);
            }
            cycle
        })
        .collect();
    Ok(cycles)
}
