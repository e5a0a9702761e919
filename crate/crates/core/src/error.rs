use alloc::string::String;

use crate::hypergraph::ArcId;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("arc {index}: {reason}")]
    InvalidArc { index: usize, reason: &'static str },

    #[error("arc {index}: head and tail share node {node}")]
    OverlappingArc { index: usize, node: u32 },

    #[error("node id {node} out of range for {num_nodes} nodes")]
    NodeOutOfRange { node: u32, num_nodes: usize },

    #[error("arc id {0} out of range")]
    ArcOutOfRange(ArcId),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("undefined input: {0}")]
    Undefined(&'static str),

    #[error("arc {arc}: reduced search space has {psi} arcs, above the cap of {cap}")]
    SearchBudget { arc: ArcId, psi: usize, cap: usize },

    #[error("arc {arc}: group search needs {states} states, above the cap of {cap}")]
    StateBudget { arc: ArcId, states: u64, cap: u64 },

    #[error("brute-force oracle refuses {arcs} arcs (limit {limit})")]
    OracleLimit { arcs: usize, limit: usize },

    #[error("distribution not normalized: total mass {0}")]
    NotNormalized(f64),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("generation failed at node {node}, arc {arc}: {step}")]
    Generation { node: u32, arc: usize, step: &'static str },
}
