//! Hardness-reduction instance generators and the brute-force oracles used
//! to check them.

mod cnf;
mod sat;
mod threesat;
mod vc;

use alloc::vec::Vec;

use thiserror::Error;

use crate::demand::{DemandGraph, GraphError, NodeId};

pub use cnf::{parse_dimacs_cnf, CnfError, CnfFormula, Literal};
pub use sat::{sat_bruteforce, SatResult, MAX_SAT_VARIABLES};
pub use threesat::{forward_witness_plan, reduce_3sat_to_twohop, threesat_budget};
pub use vc::{min_vertex_cover_bruteforce, reduce_vertex_cover_to_multihop, UndirectedGraph, MAX_VC_NODES};

/// What a node of a generated instance stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeRole {
    /// Clause `C_index`, 1-based.
    Clause { index: u32 },
    /// Literal node of variable `var` (1-based); `positive == false` is the
    /// negated literal.
    Literal { var: u32, positive: bool },
    Star,
    /// Gadget node `u[arm, slot]` of forced edge `edge` (index into
    /// [`ReductionOutput::forced_edges`]); `arm` and `slot` are 1-based.
    Gadget { edge: u32, arm: u32, slot: u32 },
    /// Node carried over unchanged from the source instance.
    Original,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub graph: DemandGraph,
    /// Pigeon budget `k` of the decision instance.
    pub budget: u64,
    pub roles: Vec<NodeRole>,
    pub forced_edges: Vec<(NodeId, NodeId)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("graph has no edges")]
    NoEdges,
    #[error("graph is not connected")]
    Disconnected,
    #[error("instance too large for brute force: {size} > {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("assignment has {found} values for {expected} variables")]
    AssignmentLength { expected: usize, found: usize },
    #[error("assignment leaves clause {0} unsatisfied")]
    Unsatisfied(u32),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
