//! JSON and text formats. Output is built as `serde_json::Value`, whose maps
//! keep keys sorted, so every document has one canonical rendering.

use pigeon_core::exact::CertificateIssue;
use pigeon_core::reductions::{NodeRole, ReductionOutput, UndirectedGraph};
use pigeon_core::{
    ApproximationReport, Certificate, DemandGraph, FlightPlan, PlannerResult, Ratio, VerificationReport, Witness,
};
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("negative value {0} where a count or node id is expected")]
    Negative(i64),
    #[error("node id {0} does not fit a 32-bit index")]
    NodeRange(i64),
    #[error(transparent)]
    Graph(#[from] pigeon_core::GraphError),
    #[error(transparent)]
    Plan(#[from] pigeon_core::PlanError),
    #[error(transparent)]
    Reduction(#[from] pigeon_core::reductions::ReductionError),
    #[error("expected a plan object with `flights` (or a solver result with `plan`)")]
    NotAPlan,
}

fn non_negative(x: i64) -> Result<u64, FormatError> {
    u64::try_from(x).map_err(|_| FormatError::Negative(x))
}

fn node_id(x: i64) -> Result<u32, FormatError> {
    u32::try_from(non_negative(x)?).map_err(|_| FormatError::NodeRange(x))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    n: i64,
    demands: Vec<[i64; 2]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct UndirectedDoc {
    n: i64,
    edges: Vec<[i64; 2]>,
}

#[derive(Deserialize)]
struct FlightDoc {
    remote: i64,
    home: i64,
}

#[derive(Deserialize)]
struct PlanDoc {
    flights: Vec<FlightDoc>,
}

fn pairs(raw: &[[i64; 2]]) -> Result<Vec<(u64, u64)>, FormatError> {
    raw.iter().map(|&[a, b]| Ok((non_negative(a)?, non_negative(b)?))).collect()
}

/// Parses `{"n": .., "demands": [[src, dst], ..]}`. Also returns the number
/// of duplicate demands that were dropped.
pub fn parse_demand_graph(text: &str) -> Result<(DemandGraph, usize), FormatError> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    let n = non_negative(doc.n)? as usize;
    Ok(DemandGraph::with_duplicate_count(n, pairs(&doc.demands)?)?)
}

pub fn parse_undirected_graph(text: &str) -> Result<UndirectedGraph, FormatError> {
    let doc: UndirectedDoc = serde_json::from_str(text)?;
    let n = non_negative(doc.n)? as usize;
    Ok(UndirectedGraph::new(n, pairs(&doc.edges)?)?)
}

/// Accepts a bare plan or any document carrying one under `plan`, so solver
/// output can be fed straight back into `verify`.
pub fn parse_plan(text: &str) -> Result<FlightPlan, FormatError> {
    let value: Value = serde_json::from_str(text)?;
    let body = if value.get("flights").is_some() {
        value
    } else {
        value.get("plan").cloned().ok_or(FormatError::NotAPlan)?
    };
    let doc: PlanDoc = serde_json::from_value(body)?;
    let mut flights = Vec::with_capacity(doc.flights.len());
    for f in doc.flights {
        flights.push(pigeon_core::Flight::new(node_id(f.remote)?, node_id(f.home)?)?);
    }
    Ok(FlightPlan::new(flights))
}

pub fn demand_graph_json(g: &DemandGraph) -> Value {
    json!({
        "n": g.node_count(),
        "demands": g.demands().iter().map(|d| [d.src.0, d.dst.0]).collect::<Vec<_>>(),
    })
}

pub fn undirected_graph_json(g: &UndirectedGraph) -> Value {
    json!({
        "n": g.node_count(),
        "edges": g.edges().iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
    })
}

pub fn plan_json(p: &FlightPlan) -> Value {
    json!({
        "flights": p.flights.iter().map(|f| json!({"remote": f.remote.0, "home": f.home.0})).collect::<Vec<_>>(),
    })
}

fn ratio_json(r: Ratio) -> Value {
    let exact = r.reduced();
    json!({"value": r.as_f64(), "exact": [exact.num, exact.den]})
}

pub fn planner_result_json(r: &PlannerResult) -> Value {
    json!({
        "mode": r.mode.as_str(),
        "algorithm": r.algorithm.as_str(),
        "plan": plan_json(&r.plan),
        "count": r.pigeons,
        "lower_bound": r.lower_bound,
        "ratio": ratio_json(r.ratio),
        "coordinators": r.coordinators.iter().map(|v| v.0).collect::<Vec<_>>(),
        "proven_optimal": r.proven_optimal,
    })
}

fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Direct { slot } => json!({"kind": "direct", "slot": slot}),
        Witness::Relay { via, first, second } => {
            json!({"kind": "relay", "via": via.0, "first": first, "second": second})
        }
        Witness::Path { slots } => json!({"kind": "path", "slots": slots}),
    }
}

pub fn report_json(r: &VerificationReport) -> Value {
    json!({
        "mode": r.mode.as_str(),
        "satisfied": r.satisfied,
        "count": r.pigeons,
        "demands": r.outcomes.iter().map(|o| json!({
            "demand": [o.demand.src.0, o.demand.dst.0],
            "witness": o.witness.as_ref().map(witness_json),
        })).collect::<Vec<_>>(),
        "failures": r.failures().map(|d| [d.src.0, d.dst.0]).collect::<Vec<_>>(),
    })
}

pub fn certificate_json(c: &Certificate) -> Value {
    let issues: Vec<Value> = c
        .issues
        .iter()
        .map(|i| match i {
            CertificateIssue::NotProvenOptimal => json!("not_proven_optimal"),
            CertificateIssue::Undelivered(ds) => {
                json!({"undelivered": ds.iter().map(|d| [d.src.0, d.dst.0]).collect::<Vec<_>>()})
            }
            CertificateIssue::BelowLowerBound => json!("below_lower_bound"),
            CertificateIssue::CountMismatch => json!("count_mismatch"),
        })
        .collect();
    json!({
        "valid": c.valid,
        "mode": c.mode.as_str(),
        "count": c.pigeons,
        "lower_bound": c.lower_bound,
        "tight": c.tight,
        "issues": issues,
    })
}

pub fn approximation_json(a: &ApproximationReport) -> Value {
    json!({
        "count": a.pigeons,
        "lower_bound": a.lower_bound,
        "ratio": ratio_json(a.ratio),
        "safe_bound": a.safe_bound,
        "nominal_bound": a.nominal_bound,
        "per_component": a.per_component.iter().map(|c| json!({
            "smallest_node": c.smallest_node.0,
            "coordinator": c.coordinator.map(|v| v.0),
            "sources": c.sources,
            "destinations": c.destinations,
            "max_degree": c.max_degree,
            "count": c.pigeons,
            "saving": c.saving,
        })).collect::<Vec<_>>(),
    })
}

fn role_json(r: &NodeRole) -> Value {
    match *r {
        NodeRole::Clause { index } => json!({"role": "clause", "index": index}),
        NodeRole::Literal { var, positive } => json!({"role": "literal", "var": var, "positive": positive}),
        NodeRole::Star => json!({"role": "star"}),
        NodeRole::Gadget { edge, arm, slot } => {
            json!({"role": "gadget", "edge": edge, "arm": arm, "slot": slot, "name": format!("u[{edge},{arm},{slot}]")})
        }
        NodeRole::Original => json!({"role": "original"}),
    }
}

pub fn reduction_json(kind: &str, out: &ReductionOutput) -> Value {
    json!({
        "kind": kind,
        "graph": demand_graph_json(&out.graph),
        "k": out.budget,
        "roles": out.roles.iter().map(role_json).collect::<Vec<_>>(),
        "forced_edges": out.forced_edges.iter().map(|(a, b)| [a.0, b.0]).collect::<Vec<_>>(),
    })
}

/// Pretty-printed with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}
