use super::{checked, plain_cycle};
use crate::error::{Error, Result};
use crate::multigraph::{Decomposition, MultiGraph, VertexId::Plain};

/// Translation vectors of the four factors inside each group of eight
/// vertices, read as elements of `Z_2^3`.
pub const FACTOR_MASKS: [usize; 4] = [0b011, 0b101, 0b110, 0b111];

/// Four edge-disjoint 1-factors of `K_{8x}` on `Plain(0..8x)` together with
/// a 4-cycle decomposition of `K_{8x+1}` minus the four factors, where the
/// extra vertex `Plain(8x)` is the apex.
#[derive(Clone, Debug)]
pub struct OneFactorSet {
    x: usize,
    factors: [Vec<(usize, usize)>; 4],
    residual: Decomposition,
}

/// Splits `K_{8x}` into groups of eight vertices labelled by `Z_2^3`;
/// factor `k` matches `v` with `v ^ FACTOR_MASKS[k]` inside its group. What
/// remains inside a group is the 3-cube, which together with the apex splits
/// into five 4-cycles. Edges between groups form `K_{8,8}`s tiled by
/// `K_{2,2}`.
pub fn sehgal_one_factors(x: usize) -> Result<OneFactorSet> {
    if x == 0 {
        return Err(Error::Precondition("need at least one group of 8".into()));
    }
    let apex = 8 * x;
    let factors = FACTOR_MASKS.map(|mask| {
        (0..apex)
            .filter(|&v| v < v ^ mask)
            .map(|v| (v, v ^ mask))
            .collect::<Vec<_>>()
    });
    let mut residual = Decomposition::new();
    for g in 0..x {
        let b = 8 * g;
        for [p, q, r] in [[0, 1, 3], [4, 5, 1], [6, 7, 5], [2, 3, 7]] {
            residual.push(plain_cycle(apex, b + p, b + q, b + r)?);
        }
        residual.push(plain_cycle(b, b + 2, b + 6, b + 4)?);
        for h in g + 1..x {
            let c = 8 * h;
            for p in (0..8).step_by(2) {
                for q in (0..8).step_by(2) {
                    residual.push(plain_cycle(b + p, c + q, b + p + 1, c + q + 1)?);
                }
            }
        }
    }
    let set = OneFactorSet { x, factors, residual };
    let target = MultiGraph::complete(apex + 1, 1).remove_edges(&set.factor_graph(&[0, 1, 2, 3]))?;
    let residual = checked(&target, set.residual.clone(), "apex residual")?;
    Ok(OneFactorSet { residual, ..set })
}

impl OneFactorSet {
    pub fn host_order(&self) -> usize {
        8 * self.x
    }

    pub fn apex(&self) -> usize {
        8 * self.x
    }

    pub fn factor(&self, k: usize) -> &[(usize, usize)] {
        &self.factors[k]
    }

    pub fn partner(&self, k: usize, v: usize) -> usize {
        v ^ FACTOR_MASKS[k]
    }

    /// Decomposition of `K_{8x+1} - F_0 - F_1 - F_2 - F_3`.
    pub fn residual(&self) -> &Decomposition {
        &self.residual
    }

    pub fn factor_graph(&self, ks: &[usize]) -> MultiGraph {
        let mut g = MultiGraph::with_vertices((0..self.host_order()).map(Plain));
        for &k in ks {
            for &(u, v) in &self.factors[k] {
                g.add_edge(Plain(u), Plain(v), 1)
                    .expect("factor edges are not loops");
            }
        }
        g
    }

    /// `F_a ∪ F_b` is a union of 4-cycles `(v, v+a, v+a+b, v+b)`, one per
    /// coset of the subgroup spanned by the two masks.
    pub fn pair_union_cycles(&self, a: usize, b: usize) -> Result<Decomposition> {
        if a == b || a > 3 || b > 3 {
            return Err(Error::Precondition(format!(
                "factor pair ({a}, {b}) must be two distinct indices below 4"
            )));
        }
        let (ma, mb) = (FACTOR_MASKS[a], FACTOR_MASKS[b]);
        let mut d = Decomposition::new();
        for v in 0..self.host_order() {
            if [ma, mb, ma ^ mb].iter().all(|&t| v < v ^ t) {
                d.push(plain_cycle(v, v ^ ma, v ^ ma ^ mb, v ^ mb)?);
            }
        }
        checked(&self.factor_graph(&[a, b]), d, "factor pair")
    }

    /// Decomposition of `K_{8x+1} - F_a - F_b`: the residual plus the cycles
    /// of the two remaining factors.
    pub fn complete_minus_pair(&self, a: usize, b: usize) -> Result<Decomposition> {
        let rest: Vec<usize> = (0..4).filter(|&k| k != a && k != b).collect();
        if rest.len() != 2 {
            return Err(Error::Precondition(format!(
                "factor pair ({a}, {b}) must be two distinct indices below 4"
            )));
        }
        let mut d = self.residual.clone();
        d.append(self.pair_union_cycles(rest[0], rest[1])?);
        let target = MultiGraph::complete(self.apex() + 1, 1).remove_edges(&self.factor_graph(&[a, b]))?;
        checked(&target, d, "complete minus two factors")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn residual_sizes() {
        assert_eq!(sehgal_one_factors(1).unwrap().residual().len(), 5);
        assert_eq!(sehgal_one_factors(2).unwrap().residual().len(), 26);
        assert_eq!(sehgal_one_factors(3).unwrap().residual().len(), 63);
    }

    #[test]
    fn factors_are_disjoint_perfect_matchings() {
        for x in 1..=4 {
            let set = sehgal_one_factors(x).unwrap();
            let mut seen = BTreeSet::new();
            for k in 0..4 {
                let f = set.factor(k);
                assert_eq!(f.len(), 4 * x);
                let covered: BTreeSet<usize> = f.iter().flat_map(|&(u, v)| [u, v]).collect();
                assert_eq!(covered.len(), 8 * x);
                for &e in f {
                    assert!(seen.insert(e));
                    assert_eq!(set.partner(k, e.0), e.1);
                }
            }
        }
    }

    #[test]
    fn every_pair_leaves_a_decomposable_graph() {
        let set = sehgal_one_factors(2).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                if a != b {
                    assert_eq!(set.complete_minus_pair(a, b).unwrap().len(), 30);
                }
            }
        }
        assert!(set.pair_union_cycles(1, 1).is_err());
    }
}
