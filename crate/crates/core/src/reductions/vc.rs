use alloc::vec;
use alloc::vec::Vec;

use super::{NodeRole, ReductionError, ReductionOutput};
use crate::demand::DemandGraph;

pub const MAX_VC_NODES: usize = 20;

/// Simple undirected graph; edges are stored as sorted `(min, max)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    edges: Vec<(u32, u32)>,
}

impl UndirectedGraph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, ReductionError>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        // Reuse the demand-graph validation for range and self-loop checks.
        let g = DemandGraph::new(n, edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))))?;
        Ok(UndirectedGraph { n, edges: g.demands().iter().map(|d| (d.src.0, d.dst.0)).collect() })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Whether all `n` nodes lie in one connected component.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a as usize].push(b as usize);
            adj[b as usize].push(a as usize);
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Size of a minimum vertex cover, by trying subsets in order of size.
pub fn min_vertex_cover_bruteforce(g: &UndirectedGraph) -> Result<usize, ReductionError> {
    if g.n > MAX_VC_NODES {
        return Err(ReductionError::TooLarge { size: g.n, limit: MAX_VC_NODES });
    }
    let covers = |mask: u32| g.edges.iter().all(|&(a, b)| mask >> a & 1 == 1 || mask >> b & 1 == 1);
    Ok((0u32..1 << g.n).filter(|&m| covers(m)).map(|m| m.count_ones() as usize).min().unwrap_or(0))
}

/// Each undirected edge becomes a demand in both directions; a cover of size
/// `k` corresponds to a multihop plan with `n + k - 1` pigeons.
pub fn reduce_vertex_cover_to_multihop(g: &UndirectedGraph, k: u64) -> Result<ReductionOutput, ReductionError> {
    if g.edges.is_empty() {
        return Err(ReductionError::NoEdges);
    }
    if !g.is_connected() {
        return Err(ReductionError::Disconnected);
    }
    let pairs = g.edges.iter().flat_map(|&(a, b)| [(u64::from(a), u64::from(b)), (u64::from(b), u64::from(a))]);
    Ok(ReductionOutput {
        graph: DemandGraph::new(g.n, pairs)?,
        budget: g.n as u64 + k - 1,
        roles: vec![NodeRole::Original; g.n],
        forced_edges: Vec::new(),
    })
}
