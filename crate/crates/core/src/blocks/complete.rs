use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::{checked, infeasible, plain_cycle, BlockCache, BlockKey};
use crate::error::{Error, Result};
use crate::multigraph::{Decomposition, MultiGraph, VertexId};
use crate::solver::{find_decomposition, SearchBudget, SearchOutcome};

const DIFFERENCE_NODE_LIMIT: u64 = 2_000_000;

/// Base blocks over `Z_modulus`, optionally with one fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceFamily {
    pub modulus: usize,
    pub with_infinity: bool,
    /// The value `modulus` stands for the fixed point.
    pub blocks: Vec<[usize; 4]>,
}

impl DifferenceFamily {
    pub fn order(&self) -> usize {
        self.modulus + usize::from(self.with_infinity)
    }

    /// All translates of all base blocks.
    pub fn develop(&self) -> Result<Decomposition> {
        let q = self.modulus;
        let shift = |v: usize, t: usize| if v == q { q } else { (v + t) % q };
        let mut d = Decomposition::new();
        for b in &self.blocks {
            for t in 0..q {
                d.push(plain_cycle(
                    shift(b[0], t),
                    shift(b[1], t),
                    shift(b[2], t),
                    shift(b[3], t),
                )?);
            }
        }
        Ok(d)
    }
}

struct DifferenceSearch {
    q: usize,
    need: Vec<u32>,
    infinity_left: usize,
    blocks: Vec<[usize; 4]>,
    nodes: u64,
}

impl DifferenceSearch {
    fn class(&self, a: usize, b: usize) -> usize {
        let d = (b + self.q - a) % self.q;
        d.min(self.q - d)
    }

    fn take(&mut self, classes: &[usize]) -> bool {
        for (i, &c) in classes.iter().enumerate() {
            if self.need[c] == 0 {
                for &r in &classes[..i] {
                    self.need[r] += 1;
                }
                return false;
            }
            self.need[c] -= 1;
        }
        true
    }

    fn give_back(&mut self, classes: &[usize]) {
        for &c in classes {
            self.need[c] += 1;
        }
    }

    fn run(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > DIFFERENCE_NODE_LIMIT {
            return false;
        }
        let q = self.q;
        if self.infinity_left > 0 {
            // (∞, 0, b, c); reflection lets b stay in the lower half
            let last = self.blocks.last().filter(|b| b[0] == q).map(|b| (b[2], b[3]));
            for b in 1..=q / 2 {
                for c in 1..q {
                    if c == b || last.is_some_and(|l| (b, c) < l) {
                        continue;
                    }
                    let classes = [self.class(0, b), self.class(b, c)];
                    if !self.take(&classes) {
                        continue;
                    }
                    self.blocks.push([q, 0, b, c]);
                    self.infinity_left -= 1;
                    if self.run() {
                        return true;
                    }
                    self.infinity_left += 1;
                    self.blocks.pop();
                    self.give_back(&classes);
                }
            }
            return false;
        }
        let Some(first) = (1..self.need.len()).find(|&c| self.need[c] > 0) else {
            return true;
        };
        // some block carries the smallest open class; put it first as 0 -> first
        for x2 in 1..q {
            if x2 == first {
                continue;
            }
            for x3 in 1..q {
                if x3 == first || x3 == x2 {
                    continue;
                }
                let classes = [
                    first,
                    self.class(first, x2),
                    self.class(x2, x3),
                    self.class(x3, 0),
                ];
                if !self.take(&classes) {
                    continue;
                }
                self.blocks.push([0, first, x2, x3]);
                if self.run() {
                    return true;
                }
                self.blocks.pop();
                self.give_back(&classes);
            }
        }
        false
    }
}

/// Searches for base blocks whose development is a 4-cycle decomposition of
/// `lambda K_n`: over `Z_n` for odd `n`, over `Z_{n-1}` plus a fixed point
/// for even `n`. Returns `None` when the arithmetic rules it out or the
/// bounded search gives up.
pub fn difference_base_blocks(n: usize, lambda: u32) -> Option<DifferenceFamily> {
    if n < 4 || lambda == 0 {
        return None;
    }
    let with_infinity = n.is_multiple_of(2);
    let q = if with_infinity { n - 1 } else { n };
    let lambda_u = lambda as usize;
    if with_infinity && lambda_u % 2 == 1 {
        return None;
    }
    let infinity_blocks = if with_infinity { lambda_u / 2 } else { 0 };
    let classes = (q - 1) / 2;
    if !(lambda_u * classes - 2 * infinity_blocks).is_multiple_of(4) {
        return None;
    }
    let mut need = vec![lambda; classes + 1];
    need[0] = 0;
    let mut search = DifferenceSearch {
        q,
        need,
        infinity_left: infinity_blocks,
        blocks: Vec::new(),
        nodes: 0,
    };
    search.run().then_some(DifferenceFamily {
        modulus: q,
        with_infinity,
        blocks: search.blocks,
    })
}

fn unit_multiplicity(n: usize) -> u32 {
    let g = |x: usize| 8 / gcd(8, x) as u32;
    if n % 2 == 1 {
        g(n - 1)
    } else {
        g(n).max(2)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn unit_complete(n: usize, unit: u32) -> Result<Decomposition> {
    static MEMO: OnceLock<Mutex<HashMap<usize, Decomposition>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(d) = memo.lock().expect("memo lock").get(&n) {
        return Ok(d.clone());
    }
    let name = format!("{unit}K_{n}");
    let target = MultiGraph::complete(n, unit);
    let d = match difference_base_blocks(n, unit) {
        Some(family) => family.develop()?,
        None => match find_decomposition(&target, SearchBudget::default()) {
            SearchOutcome::Found(d) => d,
            SearchOutcome::NoneExists => return Err(infeasible(name, "search found no decomposition")),
            SearchOutcome::BudgetExceeded(_) => return Err(Error::BudgetExceeded { block: name }),
        },
    };
    let d = checked(&target, d, &name)?;
    memo.lock().expect("memo lock").insert(n, d.clone());
    Ok(d)
}

/// 4-cycle decomposition of `lambda K_n` on `Plain(0..n)`.
///
/// Exists iff `n >= 4`, `lambda (n-1)` is even and `8 | lambda n (n-1)`.
pub fn c4_of_lambda_complete(n: usize, lambda: u32) -> Result<Decomposition> {
    let name = format!("{lambda}K_{n}");
    if lambda == 0 {
        return Err(Error::Precondition("lambda must be positive".into()));
    }
    if n < 4 {
        return Err(infeasible(name, "fewer than 4 vertices"));
    }
    let l = lambda as u128;
    let n128 = n as u128;
    if !(l * (n128 - 1)).is_multiple_of(2) {
        return Err(infeasible(name, "odd vertex degree"));
    }
    if !(l * n128 * (n128 - 1)).is_multiple_of(8) {
        return Err(infeasible(name, "edge count not divisible by 4"));
    }
    let unit = unit_multiplicity(n);
    debug_assert_eq!(lambda % unit, 0);
    Ok(unit_complete(n, unit)?.replicate((lambda / unit) as usize))
}

/// 4-cycle decomposition of `lambda (K_n - F)` for odd `n` and a 2-factor
/// (or any 2-regular subgraph) `F` given by its edge list.
///
/// The smallest multiplicity `t | lambda` with `4 | t |E(K_n - F)|` is
/// solved once through `cache` and replicated.
pub fn c4_of_complete_minus_2factor(
    n: usize,
    leave: &[(usize, usize)],
    lambda: u32,
    cache: &BlockCache,
) -> Result<Decomposition> {
    let name = format!("{lambda}(K_{n} - F)");
    if lambda == 0 {
        return Err(Error::Precondition("lambda must be positive".into()));
    }
    if n.is_multiple_of(2) {
        return Err(infeasible(name, "order must be odd"));
    }
    let mut leave_graph = MultiGraph::new();
    for &(u, v) in leave {
        if u >= n || v >= n || u == v {
            return Err(Error::Precondition(format!(
                "leave edge {u}-{v} is not an edge of K_{n}"
            )));
        }
        leave_graph.add_edge(VertexId::Plain(u), VertexId::Plain(v), 1)?;
    }
    if leave_graph.edges().any(|(_, _, k)| k > 1) || leave_graph.degrees().values().any(|&d| d != 2) {
        return Err(Error::Precondition(format!("leave of {name} is not 2-regular")));
    }
    let edges = (n * (n - 1) / 2) as u64 - leave.len() as u64;
    if edges == 0 {
        return Ok(Decomposition::new());
    }
    let unit = [1u32, 2, 4]
        .into_iter()
        .find(|t| (*t as u64 * edges).is_multiple_of(4))
        .expect("4 * edges is divisible by 4");
    if !lambda.is_multiple_of(unit) {
        return Err(infeasible(name, "edge count not divisible by 4"));
    }
    let key = BlockKey::complete_minus_two_factor(n, unit, leave);
    let d = cache.get_or_solve(&key)?;
    Ok(d.replicate((lambda / unit) as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::verify_decomposition;

    #[test]
    fn unit_multiplicities() {
        assert_eq!(unit_multiplicity(5), 2);
        assert_eq!(unit_multiplicity(7), 4);
        assert_eq!(unit_multiplicity(9), 1);
        assert_eq!(unit_multiplicity(4), 2);
        assert_eq!(unit_multiplicity(6), 4);
        assert_eq!(unit_multiplicity(8), 2);
        assert_eq!(unit_multiplicity(10), 4);
    }

    #[test]
    fn complete_examples() {
        let d = c4_of_lambda_complete(5, 2).unwrap();
        assert_eq!(d.len(), 5);
        assert!(verify_decomposition(&MultiGraph::complete(5, 2), &d).is_ok());
        let d = c4_of_lambda_complete(9, 1).unwrap();
        assert_eq!(d.len(), 9);
        assert!(matches!(
            c4_of_lambda_complete(5, 1),
            Err(Error::InfeasibleBlock { .. })
        ));
        assert!(matches!(
            c4_of_lambda_complete(3, 4),
            Err(Error::InfeasibleBlock { .. })
        ));
    }

    #[test]
    fn complete_range_matches_arithmetic() {
        for n in 4..=25usize {
            for lambda in 1..=8u32 {
                let l = lambda as usize;
                let feasible = (l * (n - 1)).is_multiple_of(2) && (l * n * (n - 1)).is_multiple_of(8);
                let got = c4_of_lambda_complete(n, lambda);
                assert_eq!(got.is_ok(), feasible, "{lambda}K_{n}");
                if let Ok(d) = got {
                    assert!(verify_decomposition(&MultiGraph::complete(n, lambda), &d).is_ok());
                }
            }
        }
    }

    #[test]
    fn difference_families_exist_for_units() {
        for n in 4..=41usize {
            let unit = unit_multiplicity(n);
            let fam = difference_base_blocks(n, unit).unwrap_or_else(|| panic!("no family for {unit}K_{n}"));
            assert_eq!(fam.order(), n);
            let d = fam.develop().unwrap();
            assert!(verify_decomposition(&MultiGraph::complete(n, unit), &d).is_ok());
        }
    }

    #[test]
    fn minus_two_factor_examples() {
        let cache = BlockCache::in_memory();
        let c3 = [(0, 1), (1, 2), (2, 0)];
        assert!(matches!(
            c4_of_complete_minus_2factor(7, &c3, 1, &cache),
            Err(Error::InfeasibleBlock { .. })
        ));
        let d = c4_of_complete_minus_2factor(7, &c3, 2, &cache).unwrap();
        assert_eq!(d.len(), 9);
        let c5 = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
        let d = c4_of_complete_minus_2factor(7, &c5, 1, &cache).unwrap();
        assert_eq!(d.len(), 4);
        let two = [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 8),
            (8, 4),
        ];
        assert!(matches!(
            c4_of_complete_minus_2factor(9, &two, 1, &cache),
            Err(Error::InfeasibleBlock { .. })
        ));
        assert!(matches!(
            c4_of_complete_minus_2factor(8, &c3, 4, &cache),
            Err(Error::InfeasibleBlock { .. })
        ));
        assert!(matches!(
            c4_of_complete_minus_2factor(7, &[(0, 1), (1, 2)], 4, &cache),
            Err(Error::Precondition(_))
        ));
    }
}
