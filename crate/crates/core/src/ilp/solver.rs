//! Depth-first branch and bound for small 0/1 programs.
//!
//! Rows are kept in `<=` form with their minimum activity maintained
//! incrementally, which gives unit propagation for free: a row whose slack
//! is smaller than a free variable's coefficient fixes that variable. The
//! objective is handled as an extra row `c·x <= K`, with `K` raised one step
//! at a time from the trivial lower bound; the first feasible `K` is optimal.

use alloc::vec;
use alloc::vec::Vec;

use super::model::{BinaryModel, Relation};
use crate::exact::{Budget, Clock, SearchLimits};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub values: Vec<bool>,
    pub objective: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub assignment: Option<Assignment>,
    /// Search nodes expanded over all cutoff rounds.
    pub nodes: u64,
}

const FREE: i8 = -1;

struct Row {
    terms: Vec<(u32, i64)>,
    rhs: i64,
    max_abs: i64,
}

struct Engine<'b, 'c> {
    rows: Vec<Row>,
    /// `(row, coefficient)` for every occurrence of a variable.
    occurs: Vec<Vec<(u32, i64)>>,
    base_minact: Vec<i64>,
    minact: Vec<i64>,
    value: Vec<i8>,
    trail: Vec<u32>,
    queue: Vec<u32>,
    /// Slot groups per chain, the groups each variable is in, and how many
    /// variables of each group are fixed to zero.
    chains: Vec<Vec<Vec<u32>>>,
    member_of: Vec<Vec<(u32, u32)>>,
    zeros: Vec<Vec<u32>>,
    order: Vec<u32>,
    budget: &'b mut Budget<'c>,
    aborted: bool,
}

impl<'b, 'c> Engine<'b, 'c> {
    fn new(m: &BinaryModel, budget: &'b mut Budget<'c>) -> Self {
        let nv = m.var_count();
        let mut rows = Vec::new();
        let mut push = |terms: Vec<(u32, i64)>, rhs: i64| {
            let max_abs = terms.iter().map(|t| t.1.abs()).max().unwrap_or(0);
            rows.push(Row { terms, rhs, max_abs });
        };
        for c in m.constraints() {
            let terms: Vec<(u32, i64)> = c.terms.iter().map(|&(v, a)| (v.0 as u32, a)).collect();
            let negated = || terms.iter().map(|&(v, a)| (v, -a)).collect();
            match c.relation {
                Relation::Le => push(terms.clone(), c.rhs),
                Relation::Ge => push(negated(), -c.rhs),
                Relation::Eq => {
                    push(negated(), -c.rhs);
                    push(terms.clone(), c.rhs);
                }
            }
        }
        // Objective cutoff; its right-hand side is set per round.
        push(m.objective().iter().map(|&(v, a)| (v.0 as u32, a)).collect(), 0);

        let mut occurs = vec![Vec::new(); nv];
        let mut base_minact = Vec::with_capacity(rows.len());
        for (r, row) in rows.iter().enumerate() {
            for &(v, a) in &row.terms {
                occurs[v as usize].push((r as u32, a));
            }
            base_minact.push(row.terms.iter().map(|t| t.1.min(0)).sum());
        }

        let chains: Vec<Vec<Vec<u32>>> = m
            .slot_chains()
            .iter()
            .map(|chain| chain.iter().map(|g| g.iter().map(|v| v.0 as u32).collect()).collect())
            .collect();
        let mut member_of = vec![Vec::new(); nv];
        for (c, chain) in chains.iter().enumerate() {
            for (g, group) in chain.iter().enumerate() {
                for &v in group {
                    member_of[v as usize].push((c as u32, g as u32));
                }
            }
        }
        let zeros = chains.iter().map(|chain| vec![0; chain.len()]).collect();

        Engine {
            minact: base_minact.clone(),
            base_minact,
            rows,
            occurs,
            value: vec![FREE; nv],
            trail: Vec::new(),
            queue: Vec::new(),
            chains,
            member_of,
            zeros,
            order: m.branch_order().into_iter().map(|v| v.0 as u32).collect(),
            budget,
            aborted: false,
        }
    }

    fn reset(&mut self, cutoff: i64) {
        self.undo(0);
        let last = self.rows.len() - 1;
        self.rows[last].rhs = cutoff;
        self.minact.copy_from_slice(&self.base_minact);
    }

    /// Fixes `v` and records the rows whose activity moved.
    fn set(&mut self, v: u32, val: bool) {
        self.value[v as usize] = val as i8;
        self.trail.push(v);
        for &(r, a) in &self.occurs[v as usize] {
            let delta = if val { a.max(0) } else { (-a).max(0) };
            if delta != 0 {
                self.minact[r as usize] += delta;
                self.queue.push(r);
            }
        }
        if !val {
            for i in 0..self.member_of[v as usize].len() {
                let (c, g) = self.member_of[v as usize][i];
                let z = &mut self.zeros[c as usize][g as usize];
                *z += 1;
                let chain = &self.chains[c as usize];
                if *z as usize == chain[g as usize].len() && (g as usize + 1) < chain.len() {
                    // Empty slot: everything later in the chain stays empty.
                    for k in 0..self.chains[c as usize][g as usize + 1].len() {
                        let w = self.chains[c as usize][g as usize + 1][k];
                        if self.value[w as usize] == FREE {
                            self.set(w, false);
                        }
                    }
                }
            }
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            let val = self.value[v as usize] == 1;
            for &(r, a) in &self.occurs[v as usize] {
                self.minact[r as usize] -= if val { a.max(0) } else { (-a).max(0) };
            }
            if !val {
                for &(c, g) in &self.member_of[v as usize] {
                    self.zeros[c as usize][g as usize] -= 1;
                }
            }
            self.value[v as usize] = FREE;
        }
        self.queue.clear();
    }

    /// Runs propagation to a fixpoint; `false` on a violated row.
    fn propagate(&mut self) -> bool {
        while let Some(r) = self.queue.pop() {
            let r = r as usize;
            let slack = self.rows[r].rhs - self.minact[r];
            if slack < 0 {
                self.queue.clear();
                return false;
            }
            if slack >= self.rows[r].max_abs {
                continue;
            }
            for k in 0..self.rows[r].terms.len() {
                let (v, a) = self.rows[r].terms[k];
                if self.value[v as usize] == FREE && a.abs() > slack {
                    self.set(v, a < 0);
                }
            }
        }
        true
    }

    fn assign(&mut self, v: u32, val: bool) -> bool {
        self.set(v, val);
        self.propagate()
    }

    fn root(&mut self) -> bool {
        self.queue.extend(0..self.rows.len() as u32);
        self.propagate()
    }

    fn dfs(&mut self, from: usize) -> bool {
        let mut p = from;
        while p < self.order.len() && self.value[self.order[p] as usize] != FREE {
            p += 1;
        }
        if p == self.order.len() {
            return true;
        }
        if !self.budget.tick() {
            self.aborted = true;
            return false;
        }
        let v = self.order[p];
        for val in [true, false] {
            let mark = self.trail.len();
            if self.assign(v, val) && self.dfs(p + 1) {
                return true;
            }
            self.undo(mark);
            if self.aborted {
                return false;
            }
        }
        false
    }
}

/// Minimises the model's objective exactly, or reports why it could not.
pub fn solve_binary_model(m: &BinaryModel, limits: &SearchLimits) -> SolveOutcome {
    solve(m, limits, None)
}

/// As [`solve_binary_model`], enforcing `limits.time_budget_ms` against `clock`.
pub fn solve_binary_model_with_clock(m: &BinaryModel, limits: &SearchLimits, clock: &dyn Clock) -> SolveOutcome {
    solve(m, limits, Some(clock))
}

fn solve(m: &BinaryModel, limits: &SearchLimits, clock: Option<&dyn Clock>) -> SolveOutcome {
    let mut budget = Budget::new(limits, clock);
    let low: i64 = m.objective().iter().map(|t| t.1.min(0)).sum();
    let high: i64 = m.objective().iter().map(|t| t.1.max(0)).sum();
    let mut engine = Engine::new(m, &mut budget);
    let mut found = None;
    let mut aborted = false;
    for cutoff in low..=high {
        engine.reset(cutoff);
        if engine.root() && engine.dfs(0) {
            let values: Vec<bool> = engine.value.iter().map(|&x| x == 1).collect();
            found = Some(Assignment { objective: m.objective_value(&values), values });
            break;
        }
        if engine.aborted {
            aborted = true;
            break;
        }
    }
    drop(engine);
    let status = match (&found, aborted) {
        (Some(_), _) => SolveStatus::Optimal,
        (None, true) => SolveStatus::BudgetExceeded,
        (None, false) => SolveStatus::Infeasible,
    };
    SolveOutcome { status, assignment: found, nodes: budget.used() }
}
