use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::IlpError;
use crate::demand::NodeId;

/// Structured variable names. Slots are 1-based; nodes are raw ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarName {
    /// Pigeon flying `u -> v` in slot `i`.
    Flight { u: u32, v: u32, i: u32 },
    /// Demand `(u, v)` leaves `u` for relay `w` in slot `i`.
    Relay { u: u32, w: u32, v: u32, i: u32 },
    /// Walk visits `v` at position `i`.
    Visit { v: u32, i: u32 },
    /// Demand `(u, v)` picked up at position `i`, delivered at `j`.
    Pickup { u: u32, v: u32, i: u32, j: u32 },
}

impl VarName {
    /// Variables that carry the objective (flights and walk positions).
    pub fn is_x(&self) -> bool {
        matches!(self, VarName::Flight { .. } | VarName::Visit { .. })
    }
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VarName::Flight { u, v, i } => write!(f, "x_{u}_{v}_{i}"),
            VarName::Relay { u, w, v, i } => write!(f, "y_{u}_{w}_{v}_{i}"),
            VarName::Visit { v, i } => write!(f, "x_{v}_{i}"),
            VarName::Pickup { u, v, i, j } => write!(f, "y_{u}_{v}_{i}_{j}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    pub terms: Vec<(VarId, i64)>,
    pub relation: Relation,
    pub rhs: i64,
}

impl Constraint {
    pub fn is_satisfied(&self, values: &[bool]) -> bool {
        let lhs: i64 = self.terms.iter().map(|&(v, c)| if values[v.0] { c } else { 0 }).sum();
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Twohop,
    Multihop,
}

/// A 0/1 program: minimise a linear objective subject to linear rows.
///
/// Besides the rows, a model records its time-slot structure: chains of
/// slots whose variables may be shifted to earlier empty slots without
/// changing feasibility or cost. The solver uses it to skip solutions that
/// leave a slot empty before a used one. It is not part of the formulation
/// and is not exported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryModel {
    pub kind: ModelKind,
    vars: Vec<VarName>,
    index: BTreeMap<VarName, VarId>,
    constraints: Vec<Constraint>,
    objective: Vec<(VarId, i64)>,
    slot_chains: Vec<Vec<Vec<VarId>>>,
    /// Components (multihop) whose walks this model encodes.
    pub(crate) components: Vec<Vec<NodeId>>,
}

impl BinaryModel {
    pub fn new(kind: ModelKind) -> Self {
        BinaryModel {
            kind,
            vars: Vec::new(),
            index: BTreeMap::new(),
            constraints: Vec::new(),
            objective: Vec::new(),
            slot_chains: Vec::new(),
            components: Vec::new(),
        }
    }

    pub fn add_var(&mut self, name: VarName) -> Result<VarId, IlpError> {
        if self.index.contains_key(&name) {
            return Err(IlpError::DuplicateVariable(name));
        }
        let id = VarId(self.vars.len());
        self.vars.push(name);
        self.index.insert(name, id);
        Ok(id)
    }

    pub fn add_constraint(
        &mut self,
        name: String,
        terms: Vec<(VarId, i64)>,
        relation: Relation,
        rhs: i64,
    ) -> Result<(), IlpError> {
        if terms.is_empty() {
            return Err(IlpError::EmptyConstraint(name));
        }
        if let Some(&(v, _)) = terms.iter().find(|(v, _)| v.0 >= self.vars.len()) {
            return Err(IlpError::UnknownVariable(v.0));
        }
        self.constraints.push(Constraint { name, terms, relation, rhs });
        Ok(())
    }

    pub fn set_objective(&mut self, terms: Vec<(VarId, i64)>) -> Result<(), IlpError> {
        if let Some(&(v, _)) = terms.iter().find(|(v, _)| v.0 >= self.vars.len()) {
            return Err(IlpError::UnknownVariable(v.0));
        }
        self.objective = terms;
        Ok(())
    }

    pub(crate) fn push_slot_chain(&mut self, chain: Vec<Vec<VarId>>) {
        self.slot_chains.push(chain);
    }

    pub fn var(&self, name: VarName) -> Option<VarId> {
        self.index.get(&name).copied()
    }

    pub fn name(&self, id: VarId) -> VarName {
        self.vars[id.0]
    }

    pub fn variables(&self) -> &[VarName] {
        &self.vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective(&self) -> &[(VarId, i64)] {
        &self.objective
    }

    pub fn slot_chains(&self) -> &[Vec<Vec<VarId>>] {
        &self.slot_chains
    }

    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    pub fn x_count(&self) -> usize {
        self.vars.iter().filter(|v| v.is_x()).count()
    }

    pub fn y_count(&self) -> usize {
        self.var_count() - self.x_count()
    }

    pub fn objective_value(&self, values: &[bool]) -> i64 {
        self.objective.iter().map(|&(v, c)| if values[v.0] { c } else { 0 }).sum()
    }

    pub fn is_feasible(&self, values: &[bool]) -> bool {
        values.len() == self.vars.len() && self.constraints.iter().all(|c| c.is_satisfied(values))
    }

    /// Branching order: objective-carrying variables slot by slot, then the
    /// rest in declaration order.
    pub(crate) fn branch_order(&self) -> Vec<VarId> {
        let mut order: Vec<VarId> = (0..self.vars.len()).map(VarId).filter(|v| self.vars[v.0].is_x()).collect();
        order.sort_by_key(|v| match self.vars[v.0] {
            VarName::Flight { u, v, i } => (i, u, v),
            VarName::Visit { v, i } => (i, v, 0),
            _ => unreachable!(),
        });
        order.extend((0..self.vars.len()).map(VarId).filter(|v| !self.vars[v.0].is_x()));
        order
    }

    /// Side-by-side union of independent models of the same kind.
    pub fn disjoint_union(kind: ModelKind, parts: &[BinaryModel]) -> Result<Self, IlpError> {
        let mut out = BinaryModel::new(kind);
        for part in parts {
            let offset = out.vars.len();
            for &name in &part.vars {
                out.add_var(name)?;
            }
            let shift = |terms: &[(VarId, i64)]| terms.iter().map(|&(v, c)| (VarId(v.0 + offset), c)).collect();
            for c in &part.constraints {
                out.add_constraint(c.name.clone(), shift(&c.terms), c.relation, c.rhs)?;
            }
            out.objective.extend(part.objective.iter().map(|&(v, c)| (VarId(v.0 + offset), c)));
            for chain in &part.slot_chains {
                out.slot_chains.push(
                    chain.iter().map(|slot| slot.iter().map(|v| VarId(v.0 + offset)).collect()).collect(),
                );
            }
            out.components.extend(part.components.iter().cloned());
        }
        Ok(out)
    }
}
