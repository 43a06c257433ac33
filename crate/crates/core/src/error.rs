use crate::multigraph::VertexId;

/// Errors produced by graph operations, constructions and the search oracle.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("removing edge {u}-{v} {count} time(s) exceeds its multiplicity {available}")]
    Underflow {
        u: VertexId,
        v: VertexId,
        count: u32,
        available: u32,
    },
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("relabeling maps two vertices onto {0}")]
    NonInjective(VertexId),
    #[error("vertex {0} is already in the graph")]
    DuplicateVertex(VertexId),
    #[error("loop at vertex {0}")]
    Loop(VertexId),
    #[error("invalid 4-cycle: {0}")]
    InvalidCycle(String),
    #[error("mn = {m}*{n} < 4 is outside the characterization")]
    OutOfTheoremScope { m: usize, n: usize },
    #[error("parameters (m={m}, n={n}, lambda={lambda}) admit no 4-cycle decomposition")]
    NotFeasible { m: usize, n: usize, lambda: u32 },
    #[error("parameters (m={m}, n={n}, lambda={lambda}) are feasible; no certificate exists")]
    FeasibleParams { m: usize, n: usize, lambda: u32 },
    #[error("order {0} must be odd")]
    EvenOrder(usize),
    #[error("value {0} must be odd and at least 5")]
    EvenOrValue(usize),
    #[error("block {block} cannot be built: {reason}")]
    InfeasibleBlock { block: String, reason: String },
    #[error("search budget exhausted while building {block}")]
    BudgetExceeded { block: String },
    #[error("construction of {what} failed verification: {report}")]
    InternalVerification { what: String, report: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
