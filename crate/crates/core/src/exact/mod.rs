//! Exact solvers for desk-scale instances and optimality certificates.
//!
//! Both solvers return a [`PlannerResult`] with `proven_optimal` set only
//! when the search finished. On budget exhaustion (or an instance beyond the
//! configured limits) they fall back to a constructive plan: the cycle walk
//! for multihop, the coordinator plan for twohop.

mod multihop;
mod twohop;

use alloc::vec::Vec;

use crate::demand::{lower_bound, Demand, DemandGraph};
use crate::plan::{verify, Mode};
use crate::planners::PlannerResult;

pub use multihop::{optimal_multihop, optimal_multihop_with_clock};
pub use twohop::{optimal_twohop, optimal_twohop_with_clock};

/// Size caps and budgets for the exact searches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest component (multihop) or number of demand-carrying nodes
    /// (twohop) searched exactly.
    pub max_nodes: usize,
    /// Largest demand count searched exactly (per component for multihop).
    pub max_demands: usize,
    /// Optional cap on the number of flights in a searched plan.
    pub max_walk_length: Option<usize>,
    /// Search-node expansions across the whole call.
    pub node_budget: u64,
    /// Wall-clock budget; only enforced when a [`Clock`] is supplied.
    pub time_budget_ms: Option<u64>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_nodes: 12,
            max_demands: 128,
            max_walk_length: None,
            node_budget: 50_000_000,
            time_budget_ms: None,
        }
    }
}

/// Host-provided time source; the crate itself has no access to a clock.
pub trait Clock {
    fn elapsed_ms(&self) -> u64;
}

/// Expansion counter shared by a single solver call.
pub(crate) struct Budget<'a> {
    used: u64,
    limit: u64,
    deadline: Option<(u64, &'a dyn Clock)>,
    exhausted: bool,
}

impl<'a> Budget<'a> {
    pub(crate) fn new(limits: &SearchLimits, clock: Option<&'a dyn Clock>) -> Self {
        Budget {
            used: 0,
            limit: limits.node_budget,
            deadline: match (limits.time_budget_ms, clock) {
                (Some(ms), Some(c)) => Some((ms, c)),
                _ => None,
            },
            exhausted: false,
        }
    }

    /// Counts one expansion; returns `false` once the budget is spent.
    #[inline]
    pub(crate) fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.used += 1;
        if self.used > self.limit {
            self.exhausted = true;
        } else if self.used & 0xfff == 0 {
            if let Some((ms, clock)) = self.deadline {
                self.exhausted = clock.elapsed_ms() >= ms;
            }
        }
        !self.exhausted
    }

    pub(crate) fn used(&self) -> u64 {
        self.used
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateIssue {
    NotProvenOptimal,
    /// The plan does not deliver these demands in its declared mode.
    Undelivered(Vec<Demand>),
    /// Fewer pigeons than the component-wise lower bound: impossible for a
    /// correct plan.
    BelowLowerBound,
    CountMismatch,
}

/// Machine-checkable summary of an exact result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub valid: bool,
    pub mode: Mode,
    pub pigeons: usize,
    /// Component-wise `max(|S_c|, |D_c|)` sum.
    pub lower_bound: usize,
    /// Count meets the lower bound, so optimality needs no search.
    pub tight: bool,
    pub issues: Vec<CertificateIssue>,
}

/// Re-verifies a solver result independently of the search that produced it.
///
/// The component-wise bound holds for twohop as well: every twohop plan is a
/// multihop plan, and multihop optima add up over components.
pub fn certify(g: &DemandGraph, r: &PlannerResult) -> Certificate {
    let lb = lower_bound(g).component_sum;
    let report = verify(g, &r.plan, r.mode);
    let mut issues = Vec::new();
    if !r.proven_optimal {
        issues.push(CertificateIssue::NotProvenOptimal);
    }
    if !report.satisfied {
        issues.push(CertificateIssue::Undelivered(report.failures().collect()));
    }
    if r.plan.len() != r.pigeons {
        issues.push(CertificateIssue::CountMismatch);
    }
    if r.plan.len() < lb {
        issues.push(CertificateIssue::BelowLowerBound);
    }
    Certificate {
        valid: issues.is_empty(),
        mode: r.mode,
        pigeons: r.plan.len(),
        lower_bound: lb,
        tight: r.plan.len() == lb,
        issues,
    }
}
