//! Planning, verification and exact solving for the pigeon-post network
//! design problem.
//!
//! A directed demand graph says which node must deliver information to which
//! other node. Pigeons are bred at a *home* node, shipped to a *remote* node
//! and, once released, fly home carrying everything stored at the remote
//! node. The goal is to satisfy every demand with as few pigeons as possible
//! under three routing regimes:
//!
//! * **singlehop**: every demand is carried by a direct flight;
//! * **twohop**: a demand may additionally use one relay node;
//! * **multihop**: a demand may travel along any chain of flights with
//!   strictly increasing time slots.
//!
//! The crate is `no_std` (it only needs `alloc`) so the algorithms can be
//! embedded anywhere; file formats and the command line live in the
//! companion `pigeon-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod demand;
pub mod exact;
pub mod ilp;
pub mod plan;
pub mod planners;
pub mod ratio;
pub mod reductions;

pub use demand::{
    degree_profile, lower_bound, weakly_connected_components, Component, ComponentPartition,
    DegreeProfile, Demand, DemandGraph, GraphError, LowerBound, NodeId,
};
pub use exact::{certify, optimal_multihop, optimal_twohop, Certificate, SearchLimits};
pub use plan::{
    plan_stats, verify, verify_multihop, verify_singlehop, verify_twohop, Flight, FlightPlan,
    Mode, PlanError, PlanStats, VerificationReport, Witness,
};
pub use planners::{
    approximation_report, plan_coordinator, plan_cycle, plan_singlehop, Algorithm,
    ApproximationReport, PlannerResult,
};
pub use ratio::Ratio;
