use std::fmt;

use serde::{Deserialize, Serialize};

use super::bases::{
    complete_row, eight_fold_two_row, even_even, four_fold_3x5, four_fold_3x6, four_fold_3x9,
    line_graph_seed, two_fold_3x4, two_fold_3x7, two_fold_square,
};
use super::extend::{extend_columns_by_four, extend_rows_by_eight, extend_rows_by_four};
use super::LineDecomposition;
use crate::blocks::BlockCache;
use crate::error::{Error, Result};
use crate::feasibility::{decide, CaseTag, Params};

/// The explicit construction a plan starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseKind {
    /// `L(K_{m,n})`, `m, n` even.
    EvenEvenProduct,
    /// `2L(K_{n,n})`, `n` odd.
    TwoFoldSquare,
    TwoFold3x4,
    TwoFold3x7,
    FourFold3x5,
    FourFold3x6,
    FourFold3x9,
    /// `8L(K_{2,n})`, `n` odd.
    EightFoldTwoRow,
    /// `lambda K_n` as a single row.
    CompleteRow,
    /// Solver-found `L(K_{m,n})`.
    SolverSeed,
}

impl fmt::Display for BaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BaseKind::EvenEvenProduct => "even-product",
            BaseKind::TwoFoldSquare => "two-fold-square",
            BaseKind::TwoFold3x4 => "two-fold-3x4",
            BaseKind::TwoFold3x7 => "two-fold-3x7",
            BaseKind::FourFold3x5 => "four-fold-3x5",
            BaseKind::FourFold3x6 => "four-fold-3x6",
            BaseKind::FourFold3x9 => "four-fold-3x9",
            BaseKind::EightFoldTwoRow => "eight-fold-two-row",
            BaseKind::CompleteRow => "complete-row",
            BaseKind::SolverSeed => "solver-seed",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecursionStep {
    /// `m -> m + 4a`
    AddFourToM(usize),
    /// `m -> m + 8a`
    AddEightToM(usize),
    Transpose,
    /// `n -> n + 4k`
    ColumnExtend(usize),
    /// `lambda -> t lambda`
    Replicate(u32),
}

impl RecursionStep {
    pub fn apply(self, p: Params) -> Params {
        match self {
            RecursionStep::AddFourToM(a) => Params { m: p.m + 4 * a, ..p },
            RecursionStep::AddEightToM(a) => Params { m: p.m + 8 * a, ..p },
            RecursionStep::Transpose => p.transposed(),
            RecursionStep::ColumnExtend(k) => Params { n: p.n + 4 * k, ..p },
            RecursionStep::Replicate(t) => Params {
                lambda: p.lambda * t,
                ..p
            },
        }
    }
}

impl fmt::Display for RecursionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecursionStep::AddFourToM(a) => write!(f, "add {} rows", 4 * a),
            RecursionStep::AddEightToM(a) => write!(f, "add {} rows", 8 * a),
            RecursionStep::Transpose => f.write_str("transpose"),
            RecursionStep::ColumnExtend(k) => write!(f, "add {} columns", 4 * k),
            RecursionStep::Replicate(t) => write!(f, "replicate x{t}"),
        }
    }
}

/// Base construction plus the steps that grow it into the target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionPlan {
    pub target: Params,
    pub case_tag: CaseTag,
    pub base_kind: BaseKind,
    pub base: Params,
    pub steps: Vec<RecursionStep>,
}

impl RecursionPlan {
    /// Parameters reached by replaying the steps on the base shape.
    pub fn reaches(&self) -> Params {
        self.steps.iter().fold(self.base, |p, s| s.apply(p))
    }
}

impl fmt::Display for RecursionPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.base;
        write!(f, "{} ({},{},{})", self.base_kind, b.m, b.n, b.lambda)?;
        for s in &self.steps {
            write!(f, "; {s}")?;
        }
        Ok(())
    }
}

struct Builder {
    kind: BaseKind,
    base: Params,
    steps: Vec<RecursionStep>,
}

impl Builder {
    fn new(kind: BaseKind, m: usize, n: usize, lambda: u32) -> Result<Self> {
        Ok(Builder {
            kind,
            base: Params::new(m, n, lambda)?,
            steps: Vec::new(),
        })
    }

    fn current(&self) -> Params {
        self.steps.iter().fold(self.base, |p, s| s.apply(p))
    }

    fn push(mut self, step: RecursionStep) -> Self {
        let trivial = matches!(
            step,
            RecursionStep::AddFourToM(0)
                | RecursionStep::AddEightToM(0)
                | RecursionStep::ColumnExtend(0)
                | RecursionStep::Replicate(1)
        );
        if !trivial {
            self.steps.push(step);
        }
        self
    }

    /// Adds rows eight at a time, then columns via a transpose sandwich.
    fn grow_odd(self, m: usize, n: usize) -> Self {
        let cur = self.current();
        let b = self.push(RecursionStep::AddEightToM((m - cur.m) / 8));
        if n > cur.n {
            b.push(RecursionStep::Transpose)
                .push(RecursionStep::AddEightToM((n - cur.n) / 8))
                .push(RecursionStep::Transpose)
        } else {
            b
        }
    }
}

// m % 8 <= n % 8, both odd
fn odd_plan(m: usize, n: usize) -> Result<Builder> {
    use BaseKind::*;
    use RecursionStep::*;
    let rows8 = |from: usize| AddEightToM((m - from) / 8);
    Ok(match (m % 8, n % 8) {
        (1, 1) if n == 1 => Builder::new(CompleteRow, 1, m, 1)?.push(Transpose),
        (1, 1) => Builder::new(CompleteRow, 1, n, 1)?.push(rows8(1)),
        (1, 3) if n == 3 => Builder::new(FourFold3x9, 3, 9, 4)?.push(Transpose).push(rows8(9)),
        (1, 3) | (1, 7) => Builder::new(CompleteRow, 1, n, 4)?.push(rows8(1)),
        (1, 5) => Builder::new(CompleteRow, 1, n, 2)?.push(rows8(1)),
        (5, 7) => Builder::new(CompleteRow, 1, n, 4)?
            .push(AddFourToM(1))
            .push(rows8(5)),
        (3, 3) => Builder::new(TwoFoldSquare, 3, 3, 2)?.grow_odd(m, n),
        (7, 7) => Builder::new(TwoFoldSquare, 7, 7, 2)?.grow_odd(m, n),
        (3, 5) => Builder::new(FourFold3x5, 3, 5, 4)?.grow_odd(m, n),
        (3, 7) => Builder::new(TwoFold3x7, 3, 7, 2)?.grow_odd(m, n),
        (5, 5) => Builder::new(SolverSeed, 5, 5, 1)?.grow_odd(m, n),
        other => unreachable!("residues {other:?} are not both odd and ordered"),
    })
}

// o odd, e even, built with the odd side as rows except for e = 2
fn mixed_plan(o: usize, e: usize) -> Result<Builder> {
    use BaseKind::*;
    use RecursionStep::*;
    Ok(if e == 2 {
        Builder::new(EightFoldTwoRow, 2, o, 8)?.push(Transpose)
    } else if e.is_multiple_of(4) && o % 4 == 1 {
        Builder::new(CompleteRow, 1, e, 2)?.push(AddFourToM((o - 1) / 4))
    } else if e.is_multiple_of(4) {
        Builder::new(TwoFold3x4, 3, 4, 2)?
            .push(AddFourToM((o - 3) / 4))
            .push(ColumnExtend((e - 4) / 4))
    } else if o % 4 == 3 {
        Builder::new(FourFold3x6, 3, 6, 4)?
            .push(AddFourToM((o - 3) / 4))
            .push(ColumnExtend((e - 6) / 4))
    } else {
        Builder::new(CompleteRow, 1, e, 4)?.push(AddFourToM((o - 1) / 4))
    })
}

/// The base and step sequence [`construct`] runs for `p`.
pub fn plan(p: Params) -> Result<RecursionPlan> {
    let verdict = decide(p);
    let (Some(case_tag), Some(mu)) = (verdict.case_tag, verdict.base_multiplicity) else {
        return Err(Error::NotFeasible {
            m: p.m,
            n: p.n,
            lambda: p.lambda,
        });
    };
    let (m, n) = (p.m, p.n);
    let mut builder = match (m % 2, n % 2) {
        (0, 0) => Builder::new(BaseKind::EvenEvenProduct, m, n, 1)?,
        (1, 1) if m % 8 <= n % 8 => odd_plan(m, n)?,
        (1, 1) => odd_plan(n, m)?.push(RecursionStep::Transpose),
        (1, 0) => mixed_plan(m, n)?,
        _ => mixed_plan(n, m)?.push(RecursionStep::Transpose),
    };
    // the two-row base is built as (2, o); undo any double transpose
    if let [.., RecursionStep::Transpose, RecursionStep::Transpose] = builder.steps.as_slice() {
        builder.steps.truncate(builder.steps.len() - 2);
    }
    debug_assert_eq!(builder.base.lambda, mu);
    let builder = builder.push(RecursionStep::Replicate(p.lambda / mu));
    let plan = RecursionPlan {
        target: p,
        case_tag,
        base_kind: builder.kind,
        base: builder.base,
        steps: builder.steps,
    };
    debug_assert_eq!(plan.reaches(), p, "plan {plan} misses {p}");
    Ok(plan)
}

fn build_base(kind: BaseKind, base: Params, cache: &BlockCache) -> Result<LineDecomposition> {
    let d = match kind {
        BaseKind::EvenEvenProduct => even_even(base.m, base.n)?,
        BaseKind::TwoFoldSquare => two_fold_square(base.m)?,
        BaseKind::TwoFold3x4 => two_fold_3x4()?,
        BaseKind::TwoFold3x7 => two_fold_3x7()?,
        BaseKind::FourFold3x5 => four_fold_3x5()?,
        BaseKind::FourFold3x6 => four_fold_3x6()?,
        BaseKind::FourFold3x9 => four_fold_3x9()?,
        BaseKind::EightFoldTwoRow => eight_fold_two_row(base.n)?,
        BaseKind::CompleteRow => complete_row(base.n, base.lambda)?,
        BaseKind::SolverSeed => line_graph_seed(base.m, base.n, base.lambda, cache)?,
    };
    if d.params() != base {
        return Err(Error::Precondition(format!(
            "base {kind} does not produce {base}"
        )));
    }
    Ok(d)
}

/// Runs a plan step by step; every intermediate result is verified.
pub fn replay(plan: &RecursionPlan, cache: &BlockCache) -> Result<LineDecomposition> {
    let mut cur = build_base(plan.base_kind, plan.base, cache)?;
    for &step in &plan.steps {
        cur = match step {
            RecursionStep::AddFourToM(a) => extend_rows_by_four(&cur, a)?,
            RecursionStep::AddEightToM(a) => extend_rows_by_eight(&cur, a, cache)?,
            RecursionStep::Transpose => cur.transpose(),
            RecursionStep::ColumnExtend(k) => extend_columns_by_four(&cur, k)?,
            RecursionStep::Replicate(t) => cur.replicate(t),
        };
    }
    if cur.params() != plan.target {
        return Err(Error::Precondition(format!(
            "plan reaches {} instead of {}",
            cur.params(),
            plan.target
        )));
    }
    Ok(cur)
}

/// A verified decomposition of `lambda L(K_{m,n})` using the process-wide
/// block cache.
pub fn construct(p: Params) -> Result<LineDecomposition> {
    construct_with_cache(p, BlockCache::global())
}

pub fn construct_with_cache(p: Params, cache: &BlockCache) -> Result<LineDecomposition> {
    let plan = plan(p)?;
    let d = replay(&plan, cache)?;
    // transposes and replication skip the per-step check
    LineDecomposition::new(p, d.into_decomposition())
}
