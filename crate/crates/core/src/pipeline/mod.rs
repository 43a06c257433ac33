//! Explicit constructions of `lambda L(K_{m,n})` decompositions: small base
//! cases, the two row-extension recursions, column extension, and the
//! dispatch that chains them into a plan for every feasible parameter set.
//!
//! Vertices are `Pair(row, column)`; row `i` is the copy of `K_n` on
//! `{(i, j)}` and column `j` is the copy of `K_m` on `{(i, j)}`.

mod bases;
mod extend;
mod plan;

pub use bases::{
    complete_row, eight_fold_two_row, even_even, four_fold_3x5, four_fold_3x6, four_fold_3x9,
    line_graph_seed, two_fold_3x4, two_fold_3x7, two_fold_square,
};
pub use extend::{extend_columns_by_four, extend_rows_by_eight, extend_rows_by_four, LeaveSpec};
pub use plan::{construct, construct_with_cache, plan, replay, BaseKind, RecursionPlan, RecursionStep};

use crate::error::{Error, Result};
use crate::feasibility::Params;
use crate::multigraph::{verify_decomposition, Decomposition, MultiGraph, VertexId};

/// A decomposition of `lambda L(K_{m,n})` that has passed verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineDecomposition {
    params: Params,
    cycles: Decomposition,
}

impl LineDecomposition {
    /// Verifies `cycles` against `lambda L(K_{m,n})`.
    pub fn new(params: Params, cycles: Decomposition) -> Result<Self> {
        let g = MultiGraph::line_graph_kmn(params.m, params.n, params.lambda);
        let report = verify_decomposition(&g, &cycles);
        if !report.is_ok() {
            return Err(Error::InternalVerification {
                what: format!("{}L(K_{{{},{}}})", params.lambda, params.m, params.n),
                report: report.to_string(),
            });
        }
        Ok(LineDecomposition { params, cycles })
    }

    pub(crate) fn assemble(m: usize, n: usize, lambda: u32, cycles: Decomposition) -> Result<Self> {
        Self::new(Params::new(m, n, lambda)?, cycles)
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.cycles
    }

    pub fn into_decomposition(self) -> Decomposition {
        self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Swaps rows and columns.
    pub fn transpose(&self) -> Self {
        LineDecomposition {
            params: self.params.transposed(),
            cycles: self
                .cycles
                .relabel(|v| match v {
                    VertexId::Pair(i, j) => VertexId::Pair(j, i),
                    other => other,
                })
                .expect("transpose is a bijection"),
        }
    }

    /// `t` copies of every cycle, decomposing `t lambda L(K_{m,n})`.
    pub fn replicate(&self, t: u32) -> Self {
        LineDecomposition {
            params: Params {
                lambda: self.params.lambda * t,
                ..self.params
            },
            cycles: self.cycles.replicate(t as usize),
        }
    }
}

/// Maps a block on `Plain(k)` into the grid.
fn place(d: &Decomposition, f: impl Fn(usize) -> (usize, usize)) -> Result<Decomposition> {
    d.relabel(|v| match v {
        VertexId::Plain(k) => {
            let (i, j) = f(k);
            VertexId::Pair(i, j)
        }
        other => other,
    })
}

fn shift(d: &Decomposition, rows: usize, cols: usize) -> Decomposition {
    d.relabel(|v| match v {
        VertexId::Pair(i, j) => VertexId::Pair(i + rows, j + cols),
        other => other,
    })
    .expect("shifting is injective")
}
