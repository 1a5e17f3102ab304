//! Flights, ordered flight plans and the delivery verifiers.
//!
//! A plan is a sequence of flights; the position of a flight is its time
//! slot and exactly one pigeon flies per slot. A relay needs the inbound
//! flight to land strictly before the outbound flight departs.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::demand::{Demand, DemandGraph, NodeId};

/// Routing regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Singlehop,
    Twohop,
    Multihop,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Singlehop => "singlehop",
            Mode::Twohop => "twohop",
            Mode::Multihop => "multihop",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = PlanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "singlehop" => Ok(Mode::Singlehop),
            "twohop" => Ok(Mode::Twohop),
            "multihop" => Ok(Mode::Multihop),
            _ => Err(PlanError::UnknownMode),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("flight from node {0} to itself")]
    SelfFlight(u32),
    #[error("flight ({remote}, {home}) references a node outside [0, {n})")]
    EndpointOutOfRange { remote: u32, home: u32, n: usize },
    #[error("unknown mode (expected singlehop, twohop or multihop)")]
    UnknownMode,
}

/// One pigeon: released at `remote`, flies straight to its `home`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flight {
    pub remote: NodeId,
    pub home: NodeId,
}

impl Flight {
    pub fn new(remote: u32, home: u32) -> Result<Self, PlanError> {
        if remote == home {
            return Err(PlanError::SelfFlight(remote));
        }
        Ok(Flight { remote: NodeId(remote), home: NodeId(home) })
    }
}

/// Totally ordered flight schedule; index = time slot.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FlightPlan {
    pub flights: Vec<Flight>,
}

impl FlightPlan {
    pub fn new(flights: Vec<Flight>) -> Self {
        FlightPlan { flights }
    }

    /// Plan from `(remote, home)` pairs in slot order.
    pub fn from_pairs<I>(pairs: I) -> Result<Self, PlanError>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        pairs
            .into_iter()
            .map(|(r, h)| Flight::new(r, h))
            .collect::<Result<Vec<_>, _>>()
            .map(FlightPlan::new)
    }

    /// Flights visiting consecutive walk positions.
    pub fn from_walk(walk: &[NodeId]) -> Self {
        let flights = walk
            .windows(2)
            .filter(|w| w[0] != w[1])
            .map(|w| Flight { remote: w[0], home: w[1] })
            .collect();
        FlightPlan { flights }
    }

    pub fn len(&self) -> usize {
        self.flights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flights.is_empty()
    }

    /// Checks every endpoint against the node range of `g`.
    pub fn check_against(&self, g: &DemandGraph) -> Result<(), PlanError> {
        let n = g.node_count();
        for f in &self.flights {
            if f.remote.index() >= n || f.home.index() >= n {
                return Err(PlanError::EndpointOutOfRange {
                    remote: f.remote.0,
                    home: f.home.0,
                    n,
                });
            }
        }
        Ok(())
    }

    fn node_span(&self, n: usize) -> usize {
        self.flights
            .iter()
            .map(|f| f.remote.index().max(f.home.index()) + 1)
            .fold(n, usize::max)
    }
}

/// How a single demand was delivered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A flight from the source straight to the destination.
    Direct { slot: usize },
    /// Source to `via` at `first`, then `via` to destination at `second`.
    Relay { via: NodeId, first: usize, second: usize },
    /// Chain of flights with strictly ascending slots.
    Path { slots: Vec<usize> },
}

impl Witness {
    /// Slots used by the witness, in flight order.
    pub fn slots(&self) -> Vec<usize> {
        match self {
            Witness::Direct { slot } => vec![*slot],
            Witness::Relay { first, second, .. } => vec![*first, *second],
            Witness::Path { slots } => slots.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemandOutcome {
    pub demand: Demand,
    /// `None` when the demand is not delivered.
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub mode: Mode,
    /// One entry per demand, in demand order.
    pub outcomes: Vec<DemandOutcome>,
    pub satisfied: bool,
    pub pigeons: usize,
}

impl VerificationReport {
    fn from_outcomes(mode: Mode, outcomes: Vec<DemandOutcome>, pigeons: usize) -> Self {
        let satisfied = outcomes.iter().all(|o| o.witness.is_some());
        VerificationReport { mode, outcomes, satisfied, pigeons }
    }

    pub fn failures(&self) -> impl Iterator<Item = Demand> + '_ {
        self.outcomes.iter().filter(|o| o.witness.is_none()).map(|o| o.demand)
    }
}

pub fn verify(g: &DemandGraph, p: &FlightPlan, mode: Mode) -> VerificationReport {
    match mode {
        Mode::Singlehop => verify_singlehop(g, p),
        Mode::Twohop => verify_twohop(g, p),
        Mode::Multihop => verify_multihop(g, p),
    }
}

/// Slots of every flight, grouped by `(remote, home)`, ascending.
fn slots_by_pair(p: &FlightPlan) -> BTreeMap<(NodeId, NodeId), Vec<usize>> {
    let mut map: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for (t, f) in p.flights.iter().enumerate() {
        map.entry((f.remote, f.home)).or_default().push(t);
    }
    map
}

pub fn verify_singlehop(g: &DemandGraph, p: &FlightPlan) -> VerificationReport {
    let slots = slots_by_pair(p);
    let outcomes = g
        .demands()
        .iter()
        .map(|&d| DemandOutcome {
            demand: d,
            witness: slots.get(&(d.src, d.dst)).map(|s| Witness::Direct { slot: s[0] }),
        })
        .collect();
    VerificationReport::from_outcomes(Mode::Singlehop, outcomes, p.len())
}

pub fn verify_twohop(g: &DemandGraph, p: &FlightPlan) -> VerificationReport {
    let slots = slots_by_pair(p);
    let mut departures: BTreeMap<NodeId, Vec<(usize, NodeId)>> = BTreeMap::new();
    for (t, f) in p.flights.iter().enumerate() {
        departures.entry(f.remote).or_default().push((t, f.home));
    }

    let outcomes = g
        .demands()
        .iter()
        .map(|&d| {
            if let Some(s) = slots.get(&(d.src, d.dst)) {
                return DemandOutcome { demand: d, witness: Some(Witness::Direct { slot: s[0] }) };
            }
            let witness = departures.get(&d.src).and_then(|outs| {
                outs.iter().find_map(|&(t1, via)| {
                    let onward = slots.get(&(via, d.dst))?;
                    let t2 = onward.iter().copied().find(|&t2| t2 > t1)?;
                    Some(Witness::Relay { via, first: t1, second: t2 })
                })
            });
            DemandOutcome { demand: d, witness }
        })
        .collect();
    VerificationReport::from_outcomes(Mode::Twohop, outcomes, p.len())
}

/// Forward sweep over the slots. Every node keeps the set of demand sources
/// whose information it already holds, together with the slot at which each
/// piece first arrived, so that a witness path can be traced backwards.
pub fn verify_multihop(g: &DemandGraph, p: &FlightPlan) -> VerificationReport {
    let n = p.node_span(g.node_count());
    let mut source_slot = vec![usize::MAX; n];
    let mut sources = Vec::new();
    for d in g.demands() {
        if source_slot[d.src.index()] == usize::MAX {
            source_slot[d.src.index()] = sources.len();
            sources.push(d.src);
        }
    }
    let k = sources.len();
    const UNKNOWN: usize = usize::MAX;
    const ORIGIN: usize = usize::MAX - 1;
    // arrival[v * k + s] = slot at which source s's information reached v.
    let mut arrival = vec![UNKNOWN; n * k];
    for (s, u) in sources.iter().enumerate() {
        arrival[u.index() * k + s] = ORIGIN;
    }
    for (t, f) in p.flights.iter().enumerate() {
        let (a, b) = (f.remote.index(), f.home.index());
        for s in 0..k {
            if arrival[a * k + s] != UNKNOWN && arrival[b * k + s] == UNKNOWN {
                arrival[b * k + s] = t;
            }
        }
    }

    let outcomes = g
        .demands()
        .iter()
        .map(|&d| {
            let s = source_slot[d.src.index()];
            let witness = (arrival[d.dst.index() * k + s] != UNKNOWN).then(|| {
                let mut slots = Vec::new();
                let mut at = d.dst.index();
                while at != d.src.index() {
                    let t = arrival[at * k + s];
                    slots.push(t);
                    at = p.flights[t].remote.index();
                }
                slots.reverse();
                Witness::Path { slots }
            });
            DemandOutcome { demand: d, witness }
        })
        .collect();
    VerificationReport::from_outcomes(Mode::Multihop, outcomes, p.len())
}

/// Pigeon count and per-node breeding (home) / release (remote) counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanStats {
    pub pigeons: usize,
    pub breeding: Vec<usize>,
    pub release: Vec<usize>,
}

pub fn plan_stats(p: &FlightPlan) -> PlanStats {
    let n = p.node_span(0);
    let mut breeding = vec![0; n];
    let mut release = vec![0; n];
    for f in &p.flights {
        breeding[f.home.index()] += 1;
        release[f.remote.index()] += 1;
    }
    PlanStats { pigeons: p.len(), breeding, release }
}
