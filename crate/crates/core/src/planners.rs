//! Constructive planners: direct flights, the per-component coordinator
//! plan, and the demand-oblivious double pass around a cycle.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::demand::{
    degree_profile, lower_bound, weakly_connected_components, Component, DemandGraph, NodeId,
};
use crate::plan::{Flight, FlightPlan, Mode};
use crate::ratio::Ratio;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Direct,
    Coordinator,
    Cycle,
    Exact,
    Ilp,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Direct => "direct",
            Algorithm::Coordinator => "coordinator",
            Algorithm::Cycle => "cycle",
            Algorithm::Exact => "exact",
            Algorithm::Ilp => "ilp",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "direct" => Algorithm::Direct,
            "coordinator" => Algorithm::Coordinator,
            "cycle" => Algorithm::Cycle,
            "exact" => Algorithm::Exact,
            "ilp" => Algorithm::Ilp,
            _ => return Err(()),
        })
    }
}

/// A plan together with the bookkeeping needed to judge it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlannerResult {
    pub plan: FlightPlan,
    /// Regime the plan is guaranteed to satisfy.
    pub mode: Mode,
    pub algorithm: Algorithm,
    /// Coordinator per component (coordinator plans only).
    pub coordinators: Vec<NodeId>,
    pub pigeons: usize,
    /// Global `max(|S|, |D|)` bound.
    pub lower_bound: usize,
    /// `pigeons / max(lower_bound, 1)`.
    pub ratio: Ratio,
    /// Set by exact solvers once optimality has been proven.
    pub proven_optimal: bool,
}

impl PlannerResult {
    pub(crate) fn assemble(
        g: &DemandGraph,
        plan: FlightPlan,
        mode: Mode,
        algorithm: Algorithm,
        coordinators: Vec<NodeId>,
        proven_optimal: bool,
    ) -> Self {
        let lb = lower_bound(g).global;
        let pigeons = plan.len();
        PlannerResult {
            plan,
            mode,
            algorithm,
            coordinators,
            pigeons,
            lower_bound: lb,
            ratio: Ratio::new(pigeons as u64, lb.max(1) as u64),
            proven_optimal,
        }
    }
}

/// One direct pigeon per demand, in sorted demand order.
pub fn plan_singlehop(g: &DemandGraph) -> PlannerResult {
    let flights = g.demands().iter().map(|d| Flight { remote: d.src, home: d.dst }).collect();
    PlannerResult::assemble(g, FlightPlan::new(flights), Mode::Singlehop, Algorithm::Direct, Vec::new(), false)
}

/// Highest-degree node of a component; ties go to the smallest id.
fn pick_coordinator(component: &Component, degree: impl Fn(NodeId) -> usize) -> NodeId {
    let mut best = component.nodes[0];
    for &v in &component.nodes[1..] {
        if degree(v) > degree(best) {
            best = v;
        }
    }
    best
}

/// Gathers every component's demand at its coordinator, then scatters it.
///
/// All gathering flights (components in order) precede all scattering
/// flights, so every demand is delivered over at most two hops.
pub fn plan_coordinator(g: &DemandGraph) -> PlannerResult {
    let profile = degree_profile(g);
    let parts = weakly_connected_components(g);
    let mut gather = Vec::new();
    let mut scatter = Vec::new();
    let mut coordinators = Vec::with_capacity(parts.components.len());
    for c in &parts.components {
        let hub = pick_coordinator(c, |v| profile.degree(v));
        coordinators.push(hub);
        gather.extend(
            c.sources().into_iter().filter(|&i| i != hub).map(|i| Flight { remote: i, home: hub }),
        );
        scatter.extend(
            c.destinations()
                .into_iter()
                .filter(|&j| j != hub)
                .map(|j| Flight { remote: hub, home: j }),
        );
    }
    gather.extend(scatter);
    PlannerResult::assemble(g, FlightPlan::new(gather), Mode::Twohop, Algorithm::Coordinator, coordinators, false)
}

/// Walk `v1 .. vm, v1 .. v(m-1)` over the ascending component nodes; every
/// node's information reaches every other node of the component.
pub(crate) fn cycle_walk(nodes: &[NodeId]) -> Vec<NodeId> {
    let m = nodes.len();
    if m < 2 {
        return Vec::new();
    }
    nodes.iter().chain(&nodes[..m - 1]).copied().collect()
}

pub fn plan_cycle(g: &DemandGraph) -> PlannerResult {
    let mut flights = Vec::new();
    for c in &weakly_connected_components(g).components {
        flights.extend(FlightPlan::from_walk(&cycle_walk(&c.nodes)).flights);
    }
    PlannerResult::assemble(g, FlightPlan::new(flights), Mode::Multihop, Algorithm::Cycle, Vec::new(), false)
}

/// Per-component accounting of a plan against `|S_c| + |D_c|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSavings {
    pub smallest_node: NodeId,
    pub coordinator: Option<NodeId>,
    pub sources: usize,
    pub destinations: usize,
    /// Largest total degree inside the component.
    pub max_degree: usize,
    /// Flights released inside the component.
    pub pigeons: usize,
    /// `sources + destinations - pigeons`; negative when the plan is worse.
    pub saving: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproximationReport {
    pub pigeons: usize,
    pub lower_bound: usize,
    pub ratio: Ratio,
    /// `|S| + |D|`, the guaranteed ceiling for coordinator plans.
    pub safe_bound: usize,
    /// `|S| + |D| - sum of component max degrees`. Reported for reference
    /// only: it is not a valid bound (a star already undercuts it).
    pub nominal_bound: i64,
    pub per_component: Vec<ComponentSavings>,
}

pub fn approximation_report(g: &DemandGraph, r: &PlannerResult) -> ApproximationReport {
    let profile = degree_profile(g);
    let parts = weakly_connected_components(g);
    let lb = lower_bound(g).global;
    let safe_bound = profile.sources.len() + profile.destinations.len();

    let mut per_component = Vec::with_capacity(parts.components.len());
    let mut degree_sum = 0i64;
    for (idx, c) in parts.components.iter().enumerate() {
        let max_degree = c.nodes.iter().map(|&v| profile.degree(v)).max().unwrap_or(0);
        degree_sum += max_degree as i64;
        let sources = c.sources().len();
        let destinations = c.destinations().len();
        let pigeons = r.plan.flights.iter().filter(|f| c.position(f.remote).is_some()).count();
        per_component.push(ComponentSavings {
            smallest_node: c.nodes[0],
            coordinator: r.coordinators.get(idx).copied(),
            sources,
            destinations,
            max_degree,
            pigeons,
            saving: (sources + destinations) as i64 - pigeons as i64,
        });
    }
    ApproximationReport {
        pigeons: r.pigeons,
        lower_bound: lb,
        ratio: Ratio::new(r.pigeons as u64, lb.max(1) as u64),
        safe_bound,
        nominal_bound: safe_bound as i64 - degree_sum,
        per_component,
    }
}
