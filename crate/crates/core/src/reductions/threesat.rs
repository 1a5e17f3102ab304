//! 3SAT to twohop reduction.
//!
//! Node layout: clause nodes `0..m`, then the literal pair `x_j, ¬x_j` for
//! each variable, then the star, then `3(2n + 4)` gadget nodes per forced
//! edge, arm by arm.

use alloc::vec::Vec;

use super::{CnfFormula, Literal, NodeRole, ReductionError, ReductionOutput};
use crate::demand::{DemandGraph, NodeId};
use crate::plan::{Flight, FlightPlan};

struct Layout {
    n: u32,
    m: u32,
    arms: u32,
    forced: Vec<(u32, u32)>,
    /// Forced edges leaving clause nodes (the rest join literal pairs).
    clause_forced: usize,
}

impl Layout {
    fn new(f: &CnfFormula) -> Self {
        let n = f.num_vars();
        let m = f.clauses().len() as u32;
        let mut layout = Layout { n, m, arms: 2 * n + 4, forced: Vec::new(), clause_forced: 0 };
        for (i, c) in f.clauses().iter().enumerate() {
            // A repeated literal yields a single forced edge.
            for (k, l) in c.iter().enumerate() {
                if !c[..k].contains(l) {
                    layout.forced.push((i as u32, layout.literal(*l)));
                }
            }
        }
        layout.clause_forced = layout.forced.len();
        for var in 1..=n {
            let (pos, neg) = (layout.literal(Literal { var, positive: true }), layout.literal(Literal { var, positive: false }));
            layout.forced.push((pos, neg));
            layout.forced.push((neg, pos));
        }
        layout
    }

    fn literal(&self, l: Literal) -> u32 {
        self.m + 2 * (l.var - 1) + u32::from(!l.positive)
    }

    fn star(&self) -> u32 {
        self.m + 2 * self.n
    }

    fn gadget(&self, edge: u32, arm: u32, slot: u32) -> u32 {
        self.star() + 1 + edge * 3 * self.arms + (arm - 1) * 3 + (slot - 1)
    }

    fn node_count(&self) -> usize {
        self.star() as usize + 1 + self.forced.len() * 3 * self.arms as usize
    }

    fn budget(&self) -> u64 {
        let (n, forced) = (u64::from(self.n), self.forced.len() as u64);
        self.clause_forced as u64 + 3 * n + forced * (6 * n + 12)
    }
}

/// Budget of the generated instance: one pigeon per forced clause edge,
/// three per variable and `6n + 12` per forced-edge gadget. Without repeated
/// literals this is `12n² + 18nm + 27n + 39m`.
pub fn threesat_budget(f: &CnfFormula) -> u64 {
    Layout::new(f).budget()
}

/// Builds the twohop instance that admits `k` pigeons iff `f` is satisfiable.
pub fn reduce_3sat_to_twohop(f: &CnfFormula) -> ReductionOutput {
    let layout = Layout::new(f);
    let star = layout.star();
    let mut roles = Vec::with_capacity(layout.node_count());
    roles.extend((1..=layout.m).map(|index| NodeRole::Clause { index }));
    for var in 1..=layout.n {
        roles.push(NodeRole::Literal { var, positive: true });
        roles.push(NodeRole::Literal { var, positive: false });
    }
    roles.push(NodeRole::Star);

    let mut edges: Vec<(u32, u32)> = layout.forced.clone();
    edges.extend((0..layout.m).map(|c| (c, star)));
    edges.extend((layout.m..star).map(|l| (l, star)));
    for (e, &(a, b)) in layout.forced.iter().enumerate() {
        let e = e as u32;
        for arm in 1..=layout.arms {
            let u = |slot| layout.gadget(e, arm, slot);
            edges.extend([(u(1), u(2)), (u(1), u(3)), (u(2), u(3)), (u(2), a), (u(3), a), (u(3), b)]);
            roles.extend((1..=3).map(|slot| NodeRole::Gadget { edge: e, arm, slot }));
        }
    }
    debug_assert_eq!(roles.len(), layout.node_count());

    let graph = DemandGraph::new(layout.node_count(), edges.iter().map(|&(a, b)| (u64::from(a), u64::from(b))))
        .expect("layout produces valid demands");
    ReductionOutput {
        graph,
        budget: layout.budget(),
        roles,
        forced_edges: layout.forced.iter().map(|&(a, b)| (NodeId(a), NodeId(b))).collect(),
    }
}

/// The placement and schedule that certify a satisfying assignment: gadget
/// arms first (`u1 -> u2 -> u3 -> a`), then clause-to-literal flights, then
/// both flights of every literal pair, and finally one flight from each true
/// literal to the star.
pub fn forward_witness_plan(f: &CnfFormula, assignment: &[bool]) -> Result<FlightPlan, ReductionError> {
    let layout = Layout::new(f);
    if assignment.len() != layout.n as usize {
        return Err(ReductionError::AssignmentLength { expected: layout.n as usize, found: assignment.len() });
    }
    if let Some(i) = f.clauses().iter().position(|c| !c.iter().any(|l| l.holds(assignment))) {
        return Err(ReductionError::Unsatisfied(i as u32 + 1));
    }
    let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(layout.budget() as usize);
    for (e, &(a, _)) in layout.forced.iter().enumerate() {
        for arm in 1..=layout.arms {
            let u = |slot| layout.gadget(e as u32, arm, slot);
            pairs.extend([(u(1), u(2)), (u(2), u(3)), (u(3), a)]);
        }
    }
    pairs.extend_from_slice(&layout.forced[..layout.clause_forced]);
    pairs.extend_from_slice(&layout.forced[layout.clause_forced..]);
    for (j, &value) in assignment.iter().enumerate() {
        pairs.push((layout.literal(Literal { var: j as u32 + 1, positive: value }), layout.star()));
    }
    Ok(FlightPlan::new(pairs.into_iter().map(|(a, b)| Flight { remote: NodeId(a), home: NodeId(b) }).collect()))
}
