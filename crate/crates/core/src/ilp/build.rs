use alloc::format;
use alloc::vec::Vec;

use super::model::{BinaryModel, ModelKind, Relation, VarId, VarName};
use super::IlpError;
use crate::demand::{weakly_connected_components, Component, DemandGraph};

/// Twohop model over all `n` nodes with `2n - 2` slots.
///
/// Rows:
/// * `slot_i`: at most one flight per slot;
/// * `demand_u_v`: a direct flight or a relay leg for every demand;
/// * `leg1_u_w_v_i`: relay variable needs the flight `u -> w` in slot `i`;
/// * `leg2_u_w_v_i`: relay variable needs some flight `w -> v` after `i`.
///
/// Relay variables exist for every `w`, including `w = u` and `w = v`;
/// their missing self-flight leaves the corresponding leg row as `y <= 0`.
pub fn build_twohop_model(g: &DemandGraph) -> Result<BinaryModel, IlpError> {
    let n = g.node_count();
    if n < 2 {
        if g.demand_count() > 0 {
            return Err(IlpError::TooFewNodes(n));
        }
        return Ok(BinaryModel::new(ModelKind::Twohop));
    }
    let slots = (2 * n - 2) as u32;
    let nodes = 0..n as u32;
    let mut m = BinaryModel::new(ModelKind::Twohop);

    for u in nodes.clone() {
        for v in nodes.clone().filter(|&v| v != u) {
            for i in 1..=slots {
                m.add_var(VarName::Flight { u, v, i })?;
            }
        }
    }
    for d in g.demands() {
        for w in nodes.clone() {
            for i in 1..=slots {
                m.add_var(VarName::Relay { u: d.src.0, w, v: d.dst.0, i })?;
            }
        }
    }
    let x = |m: &BinaryModel, u: u32, v: u32, i: u32| m.var(VarName::Flight { u, v, i });

    let mut chain = Vec::with_capacity(slots as usize);
    for i in 1..=slots {
        let terms: Vec<VarId> = nodes
            .clone()
            .flat_map(|u| nodes.clone().filter(move |&v| v != u).map(move |v| (u, v)))
            .map(|(u, v)| x(&m, u, v, i).unwrap())
            .collect();
        m.add_constraint(format!("slot_{i}"), terms.iter().map(|&t| (t, 1)).collect(), Relation::Le, 1)?;
        chain.push(terms);
    }
    for d in g.demands() {
        let (u, v) = (d.src.0, d.dst.0);
        let mut terms = Vec::new();
        for i in 1..=slots {
            terms.push((x(&m, u, v, i).unwrap(), 1));
            for w in nodes.clone() {
                terms.push((m.var(VarName::Relay { u, w, v, i }).unwrap(), 1));
            }
        }
        m.add_constraint(format!("demand_{u}_{v}"), terms, Relation::Ge, 1)?;
    }
    for d in g.demands() {
        let (u, v) = (d.src.0, d.dst.0);
        for w in nodes.clone() {
            for i in 1..=slots {
                let y = m.var(VarName::Relay { u, w, v, i }).unwrap();
                let mut leg1 = vec_with(y);
                if let Some(xv) = x(&m, u, w, i) {
                    leg1.push((xv, -1));
                }
                m.add_constraint(format!("leg1_{u}_{w}_{v}_{i}"), leg1, Relation::Le, 0)?;

                let mut leg2 = vec_with(y);
                for j in i + 1..=slots {
                    if let Some(xv) = x(&m, w, v, j) {
                        leg2.push((xv, -1));
                    }
                }
                m.add_constraint(format!("leg2_{u}_{w}_{v}_{i}"), leg2, Relation::Le, 0)?;
            }
        }
    }
    let objective = (0..m.var_count()).map(VarId).filter(|&v| m.name(v).is_x()).map(|v| (v, 1)).collect();
    m.set_objective(objective)?;
    m.push_slot_chain(chain);
    Ok(m)
}

fn vec_with(y: VarId) -> Vec<(VarId, i64)> {
    let mut v = Vec::with_capacity(8);
    v.push((y, 1));
    v
}

fn component_model(c: &Component) -> Result<BinaryModel, IlpError> {
    let positions = 2 * c.size() as u32;
    let first = c.nodes[0].0;
    let mut m = BinaryModel::new(ModelKind::Multihop);
    m.components.push(c.nodes.clone());

    for v in &c.nodes {
        for i in 1..=positions {
            m.add_var(VarName::Visit { v: v.0, i })?;
        }
    }
    for d in &c.demands {
        for i in 1..=positions {
            for j in i + 1..=positions {
                m.add_var(VarName::Pickup { u: d.src.0, v: d.dst.0, i, j })?;
            }
        }
    }
    let x = |m: &BinaryModel, v: u32, i: u32| m.var(VarName::Visit { v, i }).unwrap();

    let mut chain = Vec::with_capacity(positions as usize);
    for i in 1..=positions {
        let terms: Vec<VarId> = c.nodes.iter().map(|v| x(&m, v.0, i)).collect();
        m.add_constraint(format!("pos_{first}_{i}"), terms.iter().map(|&t| (t, 1)).collect(), Relation::Le, 1)?;
        chain.push(terms);
    }
    for d in &c.demands {
        let (u, v) = (d.src.0, d.dst.0);
        let mut terms = Vec::new();
        for i in 1..=positions {
            for j in i + 1..=positions {
                terms.push((m.var(VarName::Pickup { u, v, i, j }).unwrap(), 1));
            }
        }
        m.add_constraint(format!("demand_{u}_{v}"), terms, Relation::Eq, 1)?;
    }
    for d in &c.demands {
        let (u, v) = (d.src.0, d.dst.0);
        for i in 1..=positions {
            for j in i + 1..=positions {
                let y = m.var(VarName::Pickup { u, v, i, j }).unwrap();
                let terms = alloc::vec![(y, 2), (x(&m, u, i), -1), (x(&m, v, j), -1)];
                m.add_constraint(format!("pair_{u}_{v}_{i}_{j}"), terms, Relation::Le, 0)?;
            }
        }
    }
    let objective = (0..m.var_count()).map(VarId).filter(|&v| m.name(v).is_x()).map(|v| (v, 1)).collect();
    m.set_objective(objective)?;
    m.push_slot_chain(chain);
    Ok(m)
}

/// Multihop walk model of a demand graph forming a single weakly connected
/// component (nodes without demand are ignored). The component's pigeon
/// count is the optimum minus one.
pub fn build_multihop_model(g: &DemandGraph) -> Result<BinaryModel, IlpError> {
    let parts = weakly_connected_components(g);
    match parts.components.as_slice() {
        [] => Ok(BinaryModel::new(ModelKind::Multihop)),
        [c] => component_model(c),
        many => Err(IlpError::NotConnected(many.len())),
    }
}

/// One multihop model per weakly connected component, in component order.
pub fn build_multihop_models(g: &DemandGraph) -> Result<Vec<BinaryModel>, IlpError> {
    weakly_connected_components(g).components.iter().map(component_model).collect()
}

/// All component models side by side in one program. Pigeons equal the
/// optimum minus the number of components.
pub fn build_multihop_union(g: &DemandGraph) -> Result<BinaryModel, IlpError> {
    BinaryModel::disjoint_union(ModelKind::Multihop, &build_multihop_models(g)?)
}
