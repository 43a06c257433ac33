//! Decide, construct and verify 4-cycle decompositions of `lambda L(K_{m,n})`,
//! the lambda-fold line graph of the complete bipartite graph (equivalently
//! the rook's graph `K_m □ K_n` with every edge repeated `lambda` times).

pub mod blocks;
pub mod cli;
pub mod error;
pub mod feasibility;
pub mod multigraph;
pub mod pipeline;
pub mod solver;

pub use error::{Error, Result};
pub use feasibility::{decide, Params, Verdict};
pub use pipeline::{construct, LineDecomposition};
