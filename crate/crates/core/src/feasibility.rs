//! Decision procedure for 4-cycle decompositions of `lambda L(K_{m,n})`,
//! together with the construction case and base multiplicity each feasible
//! triple falls into, and arithmetic certificates for the infeasible ones.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A triple `(m, n, lambda)` with `mn >= 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Params {
    pub m: usize,
    pub n: usize,
    pub lambda: u32,
}

impl Params {
    pub fn new(m: usize, n: usize, lambda: u32) -> Result<Self> {
        if m == 0 || n == 0 || lambda == 0 {
            return Err(Error::Precondition(format!(
                "m, n and lambda must be positive (got {m}, {n}, {lambda})"
            )));
        }
        if m.saturating_mul(n) < 4 {
            return Err(Error::OutOfTheoremScope { m, n });
        }
        Ok(Params { m, n, lambda })
    }

    pub fn transposed(self) -> Self {
        Params {
            m: self.n,
            n: self.m,
            lambda: self.lambda,
        }
    }

    /// Vertex degree `lambda (m + n - 2)`.
    pub fn degree(&self) -> u128 {
        u128::from(self.lambda) * (self.m as u128 + self.n as u128 - 2)
    }

    /// `lambda mn (m + n - 2) / 2`, edges counted with multiplicity.
    pub fn edge_count(&self) -> u128 {
        self.degree() * self.m as u128 * self.n as u128 / 2
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m={}, n={}, lambda={})", self.m, self.n, self.lambda)
    }
}

/// The four necessary-and-sufficient conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Condition {
    /// `2 | lambda (m + n - 2)`
    C1,
    /// `8 | lambda mn (m + n - 2)`
    C2,
    /// `{m, n} ≡ {3, 7} (mod 8)` forces `lambda` even
    C3,
    /// `min(m, n) = 2` with the other side odd forces it `>= 5` and `8 | lambda`
    C4,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::C1 => "C1",
            Condition::C2 => "C2",
            Condition::C3 => "C3",
            Condition::C4 => "C4",
        };
        f.write_str(s)
    }
}

/// Which branch of the sufficiency construction applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    /// `m`, `n` both even.
    EvenEven,
    /// Both odd, `m + n - 2 ≡ 0 (mod 8)`.
    OddOdd21,
    /// Both odd, `m + n - 2 ≡ 2 (mod 4)`.
    OddOdd22,
    /// Both odd, `m + n - 2 ≡ 4 (mod 8)`.
    OddOdd23,
    /// Mixed parity, even side `≡ 0 (mod 4)`.
    MixedMod4Zero,
    /// Mixed parity, even side `≡ 2 (mod 4)` and at least 6.
    MixedMod4Two,
    /// Mixed parity, even side equal to 2.
    MixedTwo,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseTag::EvenEven => "EvenEven",
            CaseTag::OddOdd21 => "OddOdd_2_1",
            CaseTag::OddOdd22 => "OddOdd_2_2",
            CaseTag::OddOdd23 => "OddOdd_2_3",
            CaseTag::MixedMod4Zero => "Mixed_mod4_0",
            CaseTag::MixedMod4Two => "Mixed_mod4_2",
            CaseTag::MixedTwo => "Mixed_m_eq_2",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub params: Params,
    pub feasible: bool,
    pub failed_conditions: Vec<Condition>,
    pub case_tag: Option<CaseTag>,
    /// Smallest multiplicity at which the construction for `case_tag` runs;
    /// the full decomposition is that one repeated `lambda / mu` times.
    pub base_multiplicity: Option<u32>,
}

/// Case and base multiplicity for the unordered residue class of `(m, n)`.
/// Only meaningful once the conditions hold.
fn case_of(m: usize, n: usize) -> (CaseTag, u32) {
    let (lo, hi) = if m <= n { (m, n) } else { (n, m) };
    match (lo % 2, hi % 2) {
        (0, 0) => (CaseTag::EvenEven, 1),
        (1, 1) => {
            let (r1, r2) = {
                let (a, b) = (m % 8, n % 8);
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            };
            match (m + n - 2) % 8 {
                0 if (r1, r2) == (3, 7) => (CaseTag::OddOdd21, 2),
                0 => (CaseTag::OddOdd21, 1),
                4 => (CaseTag::OddOdd23, 2),
                _ => (CaseTag::OddOdd22, 4),
            }
        }
        _ => {
            let even = if m.is_multiple_of(2) { m } else { n };
            if even == 2 {
                (CaseTag::MixedTwo, 8)
            } else if even % 4 == 0 {
                (CaseTag::MixedMod4Zero, 2)
            } else {
                (CaseTag::MixedMod4Two, 4)
            }
        }
    }
}

fn failed_conditions(p: &Params) -> Vec<Condition> {
    let (m, n, lambda) = (p.m as u128, p.n as u128, u128::from(p.lambda));
    let mut failed = Vec::new();
    if (lambda * (m + n - 2)) % 2 != 0 {
        failed.push(Condition::C1);
    }
    if (lambda * m * n * (m + n - 2)) % 8 != 0 {
        failed.push(Condition::C2);
    }
    let (r1, r2) = ((m % 8).min(n % 8), (m % 8).max(n % 8));
    if (r1, r2) == (3, 7) && lambda % 2 != 0 {
        failed.push(Condition::C3);
    }
    let (lo, hi) = (m.min(n), m.max(n));
    if lo == 2 && hi % 2 == 1 && (hi < 5 || lambda % 8 != 0) {
        failed.push(Condition::C4);
    }
    failed
}

/// Evaluates the four conditions for `p`.
pub fn decide(p: Params) -> Verdict {
    let failed = failed_conditions(&p);
    let feasible = failed.is_empty();
    let (case_tag, mu) = if feasible {
        let (tag, mu) = case_of(p.m, p.n);
        (Some(tag), Some(mu))
    } else {
        (None, None)
    };
    Verdict {
        params: p,
        feasible,
        failed_conditions: failed,
        case_tag,
        base_multiplicity: mu,
    }
}

/// `lambda mn (m + n - 2) / 8` for feasible parameters.
pub fn expected_cycle_count(p: Params) -> Result<u64> {
    if !decide(p).feasible {
        return Err(Error::NotFeasible {
            m: p.m,
            n: p.n,
            lambda: p.lambda,
        });
    }
    let edges = p.edge_count();
    debug_assert_eq!(edges % 4, 0);
    Ok((edges / 4) as u64)
}

/// The counting argument that rules out a decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum CertificateKind {
    /// Every vertex has odd degree `lambda (m + n - 2)`.
    OddDegree { degree: u128 },
    /// The edge count is not a multiple of 4.
    EdgeCountNotDiv4 { edges: u128 },
    /// Each 4-cycle uses 0, 2 or 4 horizontal edges, yet the graph has an odd
    /// number `lambda m n (n - 1) / 2` of them.
    HorizontalParity { horizontal_edges: u128 },
    /// With two rows and `odd` columns every vertical edge sits in a mixed
    /// cycle; each row clique keeps `lambda odd (odd - 2) / 2` edges for pure
    /// cycles, and `lambda odd (odd - 2) ≡ residue (mod 8)` with `residue != 0`.
    MTwoCounting { odd: usize, lambda: u32, residue: u32 },
    /// The odd side is 3, so each row clique is `lambda K_3`, which holds no
    /// 4-cycle, while its horizontal edges cannot all go into mixed cycles.
    TriangleNoC4 { odd: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub params: Params,
    pub condition: Condition,
    #[serde(flatten)]
    pub kind: CertificateKind,
}

impl Certificate {
    /// Recomputes the certificate's arithmetic from its parameters.
    pub fn check(&self) -> bool {
        let p = self.params;
        let (m, n, lambda) = (p.m as u128, p.n as u128, u128::from(p.lambda));
        match &self.kind {
            CertificateKind::OddDegree { degree } => *degree == lambda * (m + n - 2) && degree % 2 == 1,
            CertificateKind::EdgeCountNotDiv4 { edges } => {
                2 * *edges == lambda * m * n * (m + n - 2) && edges % 4 != 0
            }
            CertificateKind::HorizontalParity { horizontal_edges } => {
                *horizontal_edges == lambda * m * n * (n - 1) / 2 && horizontal_edges % 2 == 1
            }
            CertificateKind::MTwoCounting {
                odd,
                lambda: l,
                residue,
            } => {
                let odd = *odd as u128;
                m.min(n) == 2
                    && m.max(n) == odd
                    && odd % 2 == 1
                    && u128::from(*l) == lambda
                    && u128::from(*residue) == (lambda * odd * (odd - 2)) % 8
                    && *residue != 0
            }
            CertificateKind::TriangleNoC4 { odd } => m.min(n) == 2 && m.max(n) == 3 && *odd == 3,
        }
    }
}

/// Certificate for the first violated condition; an odd side of 3 next to a
/// side of 2 is always reported as `TriangleNoC4`.
pub fn necessity_certificate(p: Params) -> Result<Certificate> {
    let failed = failed_conditions(&p);
    let Some(&first) = failed.first() else {
        return Err(Error::FeasibleParams {
            m: p.m,
            n: p.n,
            lambda: p.lambda,
        });
    };
    let (m, n, lambda) = (p.m as u128, p.n as u128, u128::from(p.lambda));
    let (lo, hi) = (p.m.min(p.n), p.m.max(p.n));
    if failed.contains(&Condition::C4) && lo == 2 && hi == 3 {
        return Ok(Certificate {
            params: p,
            condition: Condition::C4,
            kind: CertificateKind::TriangleNoC4 { odd: hi },
        });
    }
    let kind = match first {
        Condition::C1 => CertificateKind::OddDegree { degree: p.degree() },
        Condition::C2 => CertificateKind::EdgeCountNotDiv4 {
            edges: p.edge_count(),
        },
        Condition::C3 => CertificateKind::HorizontalParity {
            horizontal_edges: lambda * m * n * (n - 1) / 2,
        },
        Condition::C4 => {
            let odd = hi as u128;
            CertificateKind::MTwoCounting {
                odd: hi,
                lambda: p.lambda,
                residue: ((lambda * odd * (odd - 2)) % 8) as u32,
            }
        }
    };
    Ok(Certificate {
        params: p,
        condition: first,
        kind,
    })
}
