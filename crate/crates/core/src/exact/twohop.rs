//! Minimum twohop plans via iterative deepening over ordered flight
//! sequences.
//!
//! Twohop delivery is order-sensitive and has no walk normal form, so the
//! search enumerates flight sequences directly. The future of a partial plan
//! depends only on the set of distinct `(remote, home)` pairs flown so far
//! and the set of demands already met: a later flight `(w, v)` completes a
//! relay for `(u, v)` exactly when `(u, w)` has flown before. Three prunings
//! keep this tractable:
//!
//! * a flight must meet a new demand or open a new relay prefix that an
//!   unmet demand could still use;
//! * adjacent flights that commute (neither lands where the other departs)
//!   are only explored in ascending index order;
//! * failed `(pairs, met, previous flight)` states are memoised together with
//!   the remaining depth that was refuted.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::{Budget, Clock, SearchLimits};
use crate::demand::{lower_bound, DemandGraph, NodeId};
use crate::plan::{Flight, FlightPlan, Mode};
use crate::planners::{plan_coordinator, Algorithm, PlannerResult};

/// Pair and demand sets are packed into `u64`; 8 nodes give 56 pairs.
const MAX_NODES: usize = 8;
const MAX_DEMANDS: usize = 64;
const MEMO_CAP: usize = 1 << 22;

struct Move {
    from: usize,
    to: usize,
    pair: u64,
    direct: u64,
    /// `(pair bit of (u, from), demand bit of (u, to))`.
    relays: Vec<(u64, u64)>,
    /// Unmet demands leaving `from` that this flight could later relay.
    prefix_use: u64,
}

struct Search<'b, 'c> {
    nodes: Vec<NodeId>,
    moves: Vec<Move>,
    /// Demand bits by source / destination (local index).
    out_demands: Vec<u64>,
    in_demands: Vec<u64>,
    /// Pair bits leaving each node.
    out_pairs: Vec<u64>,
    goal: u64,
    memo: HashMap<(u64, u64, u16), u8>,
    path: Vec<usize>,
    budget: &'b mut Budget<'c>,
    aborted: bool,
}

impl<'b, 'c> Search<'b, 'c> {
    fn new(g: &DemandGraph, nodes: Vec<NodeId>, budget: &'b mut Budget<'c>) -> Self {
        let a = nodes.len();
        let local = |v: NodeId| nodes.binary_search(&v).unwrap();
        let mut demand_bit = vec![0u64; a * a];
        let mut out_demands = vec![0u64; a];
        let mut in_demands = vec![0u64; a];
        for (b, d) in g.demands().iter().enumerate() {
            let (u, v) = (local(d.src), local(d.dst));
            demand_bit[u * a + v] = 1 << b;
            out_demands[u] |= 1 << b;
            in_demands[v] |= 1 << b;
        }
        let pair_index = |x: usize, y: usize| x * (a - 1) + if y > x { y - 1 } else { y };
        let mut out_pairs = vec![0u64; a];
        let mut moves = Vec::new();
        for x in 0..a {
            for y in (0..a).filter(|&y| y != x) {
                let pair = 1u64 << pair_index(x, y);
                out_pairs[x] |= pair;
                let relays = (0..a)
                    .filter(|&u| u != x && u != y && demand_bit[u * a + y] != 0)
                    .map(|u| (1u64 << pair_index(u, x), demand_bit[u * a + y]))
                    .collect();
                let direct = demand_bit[x * a + y];
                moves.push(Move { from: x, to: y, pair, direct, relays, prefix_use: out_demands[x] & !direct });
            }
        }
        let goal = if g.demand_count() == 64 { u64::MAX } else { (1u64 << g.demand_count()) - 1 };
        Search {
            nodes,
            moves,
            out_demands,
            in_demands,
            out_pairs,
            goal,
            memo: HashMap::new(),
            path: Vec::new(),
            budget,
            aborted: false,
        }
    }

    /// Every unmet demand needs a future arrival at its destination; a
    /// source with unmet demand and no departure so far needs a departure.
    fn remaining_lower_bound(&self, flown: u64, met: u64) -> usize {
        let unmet = self.goal & !met;
        let arrivals = self.in_demands.iter().filter(|&&m| m & unmet != 0).count();
        let departures = (0..self.nodes.len())
            .filter(|&u| self.out_demands[u] & unmet != 0 && self.out_pairs[u] & flown == 0)
            .count();
        arrivals.max(departures)
    }

    fn commute(&self, earlier: usize, later: usize) -> bool {
        let (p, q) = (&self.moves[earlier], &self.moves[later]);
        p.to != q.from && q.to != p.from
    }

    fn dfs(&mut self, flown: u64, met: u64, prev: Option<usize>, remaining: usize) -> bool {
        if met == self.goal {
            return true;
        }
        if remaining == 0 || self.remaining_lower_bound(flown, met) > remaining {
            return false;
        }
        let key = (flown, met, prev.map_or(u16::MAX, |p| p as u16));
        if self.memo.get(&key).is_some_and(|&d| d as usize >= remaining) {
            return false;
        }
        if !self.budget.tick() {
            self.aborted = true;
            return false;
        }
        let unmet = self.goal & !met;
        for f in 0..self.moves.len() {
            if let Some(p) = prev {
                if f < p && self.commute(p, f) {
                    continue;
                }
            }
            let mv = &self.moves[f];
            let mut gained = mv.direct;
            for &(needed, demand) in &mv.relays {
                if flown & needed != 0 {
                    gained |= demand;
                }
            }
            gained &= unmet;
            let opens_prefix = flown & mv.pair == 0 && mv.prefix_use & unmet != 0;
            if gained == 0 && !opens_prefix {
                continue;
            }
            let next_flown = flown | mv.pair;
            self.path.push(f);
            if self.dfs(next_flown, met | gained, Some(f), remaining - 1) {
                return true;
            }
            self.path.pop();
            if self.aborted {
                return false;
            }
        }
        if self.memo.len() >= MEMO_CAP {
            self.memo.clear();
        }
        self.memo.insert(key, remaining as u8);
        false
    }

    fn plan(&self) -> FlightPlan {
        FlightPlan::new(
            self.path
                .iter()
                .map(|&f| Flight { remote: self.nodes[self.moves[f].from], home: self.nodes[self.moves[f].to] })
                .collect(),
        )
    }
}

/// Minimum-pigeon twohop plan.
pub fn optimal_twohop(g: &DemandGraph, limits: &SearchLimits) -> PlannerResult {
    solve(g, limits, None)
}

/// As [`optimal_twohop`], enforcing `limits.time_budget_ms` against `clock`.
pub fn optimal_twohop_with_clock(g: &DemandGraph, limits: &SearchLimits, clock: &dyn Clock) -> PlannerResult {
    solve(g, limits, Some(clock))
}

fn solve(g: &DemandGraph, limits: &SearchLimits, clock: Option<&dyn Clock>) -> PlannerResult {
    let fallback = plan_coordinator(g);
    let finish = |plan: FlightPlan, proven: bool| {
        PlannerResult::assemble(g, plan, Mode::Twohop, Algorithm::Exact, Vec::new(), proven)
    };

    // Nodes without demand never help as relays: routing through such a
    // node can always be redirected through the first source flying there.
    let mut nodes: Vec<NodeId> = g.demands().iter().flat_map(|d| [d.src, d.dst]).collect();
    nodes.sort_unstable();
    nodes.dedup();
    if nodes.len() > limits.max_nodes.min(MAX_NODES) || g.demand_count() > limits.max_demands.min(MAX_DEMANDS) {
        return finish(fallback.plan, false);
    }

    // Every twohop plan is a multihop plan, and multihop optima add up over
    // components, so the component-wise bound applies.
    let start = lower_bound(g).component_sum;
    let mut stop = fallback.pigeons;
    if let Some(cap) = limits.max_walk_length {
        stop = stop.min(cap + 1);
    }
    let mut budget = Budget::new(limits, clock);
    let mut search = Search::new(g, nodes, &mut budget);
    for k in start..stop {
        if search.dfs(0, 0, None, k) {
            return finish(search.plan(), true);
        }
        if search.aborted {
            return finish(fallback.plan, false);
        }
    }
    // No shorter plan exists below the coordinator count.
    let proven = stop == fallback.pigeons;
    finish(fallback.plan, proven)
}
