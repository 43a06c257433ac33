//! Verified building blocks: decompositions of `lambda K_n`, `K_n - F`,
//! `lambda K_{m,n}`, `K_m □ K_n` for even `m, n`, Hamilton decompositions of
//! `K_n`, and four 1-factors of `K_{8x}` with a decomposable apex residual.
//!
//! Every block is checked against its target graph before it is returned; a
//! failed check is a construction bug and surfaces as
//! [`Error::InternalVerification`].

mod bipartite;
mod cache;
mod complete;
mod factors;
mod hamilton;
mod product;

pub use bipartite::{c4_of_lambda_complete_bipartite, torus_four_fold};
pub use cache::{BlockCache, BlockKey, LoadStats, CACHE_FORMAT_VERSION};
pub use complete::{
    c4_of_complete_minus_2factor, c4_of_lambda_complete, difference_base_blocks, DifferenceFamily,
};
pub use factors::{sehgal_one_factors, OneFactorSet, FACTOR_MASKS};
pub use hamilton::walecki_hamilton;
pub use product::c4_of_even_even_product;

use crate::error::{Error, Result};
use crate::multigraph::{verify_decomposition, Decomposition, FourCycle, MultiGraph, VertexId};

pub(crate) fn plain_cycle(a: usize, b: usize, c: usize, d: usize) -> Result<FourCycle> {
    use VertexId::Plain;
    FourCycle::new(Plain(a), Plain(b), Plain(c), Plain(d))
}

pub(crate) fn checked(target: &MultiGraph, d: Decomposition, what: &str) -> Result<Decomposition> {
    let report = verify_decomposition(target, &d);
    if report.is_ok() {
        Ok(d)
    } else {
        Err(Error::InternalVerification {
            what: what.to_string(),
            report: report.to_string(),
        })
    }
}

fn infeasible(block: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::InfeasibleBlock {
        block: block.into(),
        reason: reason.into(),
    }
}
