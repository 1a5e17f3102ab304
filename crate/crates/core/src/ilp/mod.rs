//! Integer programming formulations of the twohop and multihop problems,
//! a small exact 0/1 solver, plan extraction and LP-file export.

mod build;
mod extract;
mod lp;
mod model;
mod solver;

use alloc::string::String;
use alloc::vec::Vec;

use crate::demand::{weakly_connected_components, DemandGraph};
use crate::exact::{Clock, SearchLimits};
use crate::plan::{FlightPlan, Mode};
use crate::planners::{cycle_walk, plan_coordinator, Algorithm, PlannerResult};

pub use build::{build_multihop_model, build_multihop_models, build_multihop_union, build_twohop_model};
pub use extract::extract_plan;
pub use lp::export_lp;
pub use model::{BinaryModel, Constraint, ModelKind, Relation, VarId, VarName};
pub use solver::{solve_binary_model, solve_binary_model_with_clock, Assignment, SolveOutcome, SolveStatus};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IlpError {
    #[error("variable {0} declared twice")]
    DuplicateVariable(VarName),
    #[error("constraint {0} has no terms")]
    EmptyConstraint(String),
    #[error("unknown variable index {0}")]
    UnknownVariable(usize),
    #[error("a twohop model needs at least two nodes, got {0}")]
    TooFewNodes(usize),
    #[error("demand graph has {0} components; build one model per component")]
    NotConnected(usize),
    #[error("assignment has {found} values, model has {expected} variables")]
    AssignmentLength { expected: usize, found: usize },
    #[error("two variables set in slot {0}")]
    SlotConflict(u32),
    #[error("node {0} is not part of any modelled component")]
    UnknownNode(u32),
    #[error("model is infeasible")]
    Infeasible,
}

fn run(m: &BinaryModel, limits: &SearchLimits, clock: Option<&dyn Clock>) -> Result<Option<FlightPlan>, IlpError> {
    let out = match clock {
        Some(c) => solve_binary_model_with_clock(m, limits, c),
        None => solve_binary_model(m, limits),
    };
    match (out.status, out.assignment) {
        (SolveStatus::Optimal, Some(a)) => extract_plan(m, &a).map(Some),
        (SolveStatus::BudgetExceeded, _) => Ok(None),
        _ => Err(IlpError::Infeasible),
    }
}

/// Twohop plan from the integer program; the coordinator plan (flagged as
/// not proven optimal) when the solver runs out of budget.
pub fn solve_twohop_ilp(g: &DemandGraph, limits: &SearchLimits) -> Result<PlannerResult, IlpError> {
    twohop(g, limits, None)
}

pub fn solve_twohop_ilp_with_clock(
    g: &DemandGraph,
    limits: &SearchLimits,
    clock: &dyn Clock,
) -> Result<PlannerResult, IlpError> {
    twohop(g, limits, Some(clock))
}

fn twohop(g: &DemandGraph, limits: &SearchLimits, clock: Option<&dyn Clock>) -> Result<PlannerResult, IlpError> {
    let m = build_twohop_model(g)?;
    let (plan, proven) = match run(&m, limits, clock)? {
        Some(plan) => (plan, true),
        None => (plan_coordinator(g).plan, false),
    };
    Ok(PlannerResult::assemble(g, plan, Mode::Twohop, Algorithm::Ilp, Vec::new(), proven))
}

/// Multihop plan from one integer program per component; components that
/// exhaust the budget fall back to their cycle walk.
pub fn solve_multihop_ilp(g: &DemandGraph, limits: &SearchLimits) -> Result<PlannerResult, IlpError> {
    multihop(g, limits, None)
}

pub fn solve_multihop_ilp_with_clock(
    g: &DemandGraph,
    limits: &SearchLimits,
    clock: &dyn Clock,
) -> Result<PlannerResult, IlpError> {
    multihop(g, limits, Some(clock))
}

fn multihop(g: &DemandGraph, limits: &SearchLimits, clock: Option<&dyn Clock>) -> Result<PlannerResult, IlpError> {
    let mut flights = Vec::new();
    let mut proven = true;
    for c in &weakly_connected_components(g).components {
        let m = build_multihop_model(&c.to_graph(g.node_count()))?;
        match run(&m, limits, clock)? {
            Some(plan) => flights.extend(plan.flights),
            None => {
                proven = false;
                flights.extend(FlightPlan::from_walk(&cycle_walk(&c.nodes)).flights);
            }
        }
    }
    Ok(PlannerResult::assemble(g, FlightPlan::new(flights), Mode::Multihop, Algorithm::Ilp, Vec::new(), proven))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demand::fixtures::*;
    use crate::exact::{optimal_multihop, optimal_twohop};
    use crate::plan::{verify_multihop, verify_twohop};

    fn objective(m: &BinaryModel) -> i64 {
        let out = solve_binary_model(m, &SearchLimits::default());
        assert_eq!(out.status, SolveStatus::Optimal);
        let a = out.assignment.unwrap();
        assert!(m.is_feasible(&a.values));
        a.objective
    }

    #[test]
    fn multihop_objectives() {
        let g = DemandGraph::new(2, [(0, 1)]).unwrap();
        assert_eq!(objective(&build_multihop_model(&g).unwrap()), 2);
        assert_eq!(objective(&build_multihop_model(&cycle(4)).unwrap()), 5);
        assert_eq!(objective(&build_multihop_model(&fig1()).unwrap()), 6);
        // Both orientations of every edge of the vertex-cover example.
        let vc = DemandGraph::new(4, [(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0), (0, 3), (3, 0)]).unwrap();
        assert_eq!(objective(&build_multihop_model(&vc).unwrap()), 6);
    }

    #[test]
    fn twohop_objectives() {
        let g = DemandGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(objective(&build_twohop_model(&g).unwrap()), 2);
        assert_eq!(objective(&build_twohop_model(&cycle(3)).unwrap()), 3);
        assert_eq!(objective(&build_twohop_model(&star(3)).unwrap()), 3);
    }

    #[test]
    fn solved_plans_verify_and_match_exact() {
        let lim = SearchLimits::default();
        for g in [cycle(4), star(3), DemandGraph::new(4, [(0, 1), (2, 3), (3, 2)]).unwrap()] {
            let r = solve_multihop_ilp(&g, &lim).unwrap();
            assert!(r.proven_optimal);
            assert!(verify_multihop(&g, &r.plan).satisfied);
            assert_eq!(r.pigeons, optimal_multihop(&g, &lim).pigeons);

            let r = solve_twohop_ilp(&g, &lim).unwrap();
            assert!(r.proven_optimal);
            assert!(verify_twohop(&g, &r.plan).satisfied);
            assert_eq!(r.pigeons, optimal_twohop(&g, &lim).pigeons);
        }
    }

    #[test]
    fn exhausted_budget_falls_back() {
        let lim = SearchLimits { node_budget: 1, ..SearchLimits::default() };
        let r = solve_twohop_ilp(&cycle(4), &lim).unwrap();
        assert!(!r.proven_optimal);
        assert_eq!(r.pigeons, 6);
        let r = solve_multihop_ilp(&cycle(4), &lim).unwrap();
        assert!(!r.proven_optimal);
        assert!(verify_multihop(&cycle(4), &r.plan).satisfied);
    }

    #[test]
    fn extraction_rejects_crowded_slot() {
        let g = DemandGraph::new(2, [(0, 1)]).unwrap();
        let m = build_twohop_model(&g).unwrap();
        let mut values = alloc::vec![false; m.var_count()];
        values[m.var(VarName::Flight { u: 0, v: 1, i: 1 }).unwrap().0] = true;
        values[m.var(VarName::Flight { u: 1, v: 0, i: 1 }).unwrap().0] = true;
        let a = Assignment { objective: 2, values };
        assert_eq!(extract_plan(&m, &a), Err(IlpError::SlotConflict(1)));
    }
}
