use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::model::{BinaryModel, ModelKind, VarName};
use super::solver::Assignment;
use super::IlpError;
use crate::demand::NodeId;
use crate::plan::{Flight, FlightPlan};

/// Reads a flight plan off a solved model.
///
/// Twohop: the flights of the used slots, in slot order. Multihop: each
/// component's visited positions form a walk, and the walks are
/// concatenated in component order.
pub fn extract_plan(m: &BinaryModel, a: &Assignment) -> Result<FlightPlan, IlpError> {
    if a.values.len() != m.var_count() {
        return Err(IlpError::AssignmentLength { expected: m.var_count(), found: a.values.len() });
    }
    let chosen = m.variables().iter().zip(&a.values).filter(|(_, &on)| on).map(|(n, _)| *n);
    match m.kind {
        ModelKind::Twohop => {
            let mut by_slot: BTreeMap<u32, Flight> = BTreeMap::new();
            for name in chosen {
                if let VarName::Flight { u, v, i } = name {
                    if by_slot.insert(i, Flight { remote: NodeId(u), home: NodeId(v) }).is_some() {
                        return Err(IlpError::SlotConflict(i));
                    }
                }
            }
            Ok(FlightPlan::new(by_slot.into_values().collect()))
        }
        ModelKind::Multihop => {
            let mut by_position: BTreeMap<(usize, u32), NodeId> = BTreeMap::new();
            for name in chosen {
                if let VarName::Visit { v, i } = name {
                    let c = m
                        .components
                        .iter()
                        .position(|c| c.binary_search(&NodeId(v)).is_ok())
                        .ok_or(IlpError::UnknownNode(v))?;
                    if by_position.insert((c, i), NodeId(v)).is_some() {
                        return Err(IlpError::SlotConflict(i));
                    }
                }
            }
            let mut flights = Vec::new();
            for c in 0..m.components.len() {
                let walk: Vec<NodeId> = by_position.range((c, 0)..=(c, u32::MAX)).map(|(_, &v)| v).collect();
                flights.extend(FlightPlan::from_walk(&walk).flights);
            }
            Ok(FlightPlan::new(flights))
        }
    }
}
