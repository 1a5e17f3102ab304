//! Demand graphs, degree profiles, weakly connected components and the
//! universal `max(|S|, |D|)` lower bound.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Dense node index in `[0, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<u32> for NodeId {
    fn from(v: u32) -> Self {
        NodeId(v)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One unit of information that must travel from `src` to `dst`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Demand {
    pub src: NodeId,
    pub dst: NodeId,
}

impl Demand {
    pub fn new(src: u32, dst: u32) -> Self {
        Demand { src: NodeId(src), dst: NodeId(dst) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("demand ({src}, {dst}) references a node outside [0, {n})")]
    EndpointOutOfRange { src: u64, dst: u64, n: usize },
    #[error("self-demand on node {0}")]
    SelfDemand(u64),
    #[error("node count {0} does not fit a 32-bit node index")]
    TooManyNodes(usize),
}

/// Directed, unweighted demand graph on nodes `0..n`.
///
/// Demands are kept sorted lexicographically and free of duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemandGraph {
    n: usize,
    demands: Vec<Demand>,
}

impl DemandGraph {
    /// Builds a validated graph; duplicate pairs are dropped silently.
    pub fn new<I>(n: usize, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        Self::with_duplicate_count(n, pairs).map(|(g, _)| g)
    }

    /// Like [`DemandGraph::new`] but also reports how many duplicate pairs
    /// were dropped.
    pub fn with_duplicate_count<I>(n: usize, pairs: I) -> Result<(Self, usize), GraphError>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        if n > u32::MAX as usize {
            return Err(GraphError::TooManyNodes(n));
        }
        let mut set = BTreeSet::new();
        let mut duplicates = 0;
        for (src, dst) in pairs {
            if src >= n as u64 || dst >= n as u64 {
                return Err(GraphError::EndpointOutOfRange { src, dst, n });
            }
            if src == dst {
                return Err(GraphError::SelfDemand(src));
            }
            if !set.insert(Demand::new(src as u32, dst as u32)) {
                duplicates += 1;
            }
        }
        Ok((DemandGraph { n, demands: set.into_iter().collect() }, duplicates))
    }

    pub fn empty(n: usize) -> Self {
        DemandGraph { n, demands: Vec::new() }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Sorted, duplicate-free demand list.
    pub fn demands(&self) -> &[Demand] {
        &self.demands
    }

    pub fn demand_count(&self) -> usize {
        self.demands.len()
    }

    pub fn has_demand(&self, src: NodeId, dst: NodeId) -> bool {
        self.demands.binary_search(&Demand { src, dst }).is_ok()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.n as u32).map(NodeId)
    }
}

/// Sources, destinations and per-node degrees of a demand graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub sources: Vec<NodeId>,
    pub destinations: Vec<NodeId>,
    pub out_degree: Vec<usize>,
    pub in_degree: Vec<usize>,
}

impl DegreeProfile {
    /// Total (in + out) degree.
    pub fn degree(&self, v: NodeId) -> usize {
        self.out_degree[v.index()] + self.in_degree[v.index()]
    }
}

pub fn degree_profile(g: &DemandGraph) -> DegreeProfile {
    let mut out_degree = vec![0; g.n];
    let mut in_degree = vec![0; g.n];
    for d in &g.demands {
        out_degree[d.src.index()] += 1;
        in_degree[d.dst.index()] += 1;
    }
    let pick = |deg: &[usize]| {
        deg.iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(v, _)| NodeId(v as u32))
            .collect()
    };
    DegreeProfile {
        sources: pick(&out_degree),
        destinations: pick(&in_degree),
        out_degree,
        in_degree,
    }
}

/// One weakly connected component of the demand graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Ascending node ids.
    pub nodes: Vec<NodeId>,
    /// Sorted demands with both endpoints in `nodes`.
    pub demands: Vec<Demand>,
}

impl Component {
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn sources(&self) -> Vec<NodeId> {
        let set: BTreeSet<_> = self.demands.iter().map(|d| d.src).collect();
        set.into_iter().collect()
    }

    pub fn destinations(&self) -> Vec<NodeId> {
        let set: BTreeSet<_> = self.demands.iter().map(|d| d.dst).collect();
        set.into_iter().collect()
    }

    /// Local position of `v` in `nodes`.
    pub fn position(&self, v: NodeId) -> Option<usize> {
        self.nodes.binary_search(&v).ok()
    }

    /// The component as a graph on the same node range.
    pub fn to_graph(&self, n: usize) -> DemandGraph {
        DemandGraph { n, demands: self.demands.clone() }
    }
}

/// Weakly connected components ordered by smallest member, plus the nodes
/// that carry no demand at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    pub components: Vec<Component>,
    pub isolated: Vec<NodeId>,
}

impl ComponentPartition {
    /// Index of the component containing `v`, if `v` is not isolated.
    pub fn component_of(&self, v: NodeId) -> Option<usize> {
        self.components.iter().position(|c| c.position(v).is_some())
    }
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // Keep the smaller index as root.
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }
}

pub fn weakly_connected_components(g: &DemandGraph) -> ComponentPartition {
    let mut sets = DisjointSets::new(g.n);
    let mut touched = vec![false; g.n];
    for d in &g.demands {
        sets.union(d.src.index(), d.dst.index());
        touched[d.src.index()] = true;
        touched[d.dst.index()] = true;
    }

    // Roots are the smallest members, so scanning in node order yields the
    // components sorted by smallest member.
    let mut slot_of_root = vec![usize::MAX; g.n];
    let mut components: Vec<Component> = Vec::new();
    let mut isolated = Vec::new();
    for v in 0..g.n {
        if !touched[v] {
            isolated.push(NodeId(v as u32));
            continue;
        }
        let root = sets.find(v);
        if slot_of_root[root] == usize::MAX {
            slot_of_root[root] = components.len();
            components.push(Component { nodes: Vec::new(), demands: Vec::new() });
        }
        components[slot_of_root[root]].nodes.push(NodeId(v as u32));
    }
    for d in &g.demands {
        let root = sets.find(d.src.index());
        components[slot_of_root[root]].demands.push(*d);
    }
    ComponentPartition { components, isolated }
}

/// The `max(|S|, |D|)` bound, globally and per weakly connected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBound {
    pub global: usize,
    pub per_component: Vec<usize>,
    /// Sum of `per_component`; never below `global`.
    pub component_sum: usize,
}

pub fn lower_bound(g: &DemandGraph) -> LowerBound {
    let profile = degree_profile(g);
    let global = profile.sources.len().max(profile.destinations.len());
    let per_component: Vec<usize> = weakly_connected_components(g)
        .components
        .iter()
        .map(|c| c.sources().len().max(c.destinations().len()))
        .collect();
    let component_sum = per_component.iter().sum();
    LowerBound { global, per_component, component_sum }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Three sources `0..3` and three destinations `3..6`.
    pub fn fig1() -> DemandGraph {
        DemandGraph::new(6, [(0, 3), (0, 4), (0, 5), (1, 4), (1, 5), (2, 3)]).unwrap()
    }

    pub fn cycle(n: u64) -> DemandGraph {
        DemandGraph::new(n as usize, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn star(leaves: u64) -> DemandGraph {
        DemandGraph::new(leaves as usize + 1, (1..=leaves).map(|j| (0, j))).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use proptest::prelude::*;

    fn ids(v: &[u32]) -> Vec<NodeId> {
        v.iter().copied().map(NodeId).collect()
    }

    #[test]
    fn rejects_self_demand_and_out_of_range() {
        assert_eq!(DemandGraph::new(3, [(0, 0)]), Err(GraphError::SelfDemand(0)));
        assert!(matches!(
            DemandGraph::new(2, [(0, 2)]),
            Err(GraphError::EndpointOutOfRange { .. })
        ));
    }

    #[test]
    fn duplicates_are_counted_and_dropped() {
        let (g, dups) = DemandGraph::with_duplicate_count(3, [(1, 2), (0, 1), (1, 2)]).unwrap();
        assert_eq!(dups, 1);
        assert_eq!(g.demands(), &[Demand::new(0, 1), Demand::new(1, 2)]);
    }

    #[test]
    fn fig1_profile() {
        let p = degree_profile(&fig1());
        assert_eq!(p.sources, ids(&[0, 1, 2]));
        assert_eq!(p.destinations, ids(&[3, 4, 5]));
        assert_eq!(p.degree(NodeId(0)), 3);
    }

    #[test]
    fn empty_and_cycle_profiles() {
        let p = degree_profile(&DemandGraph::empty(4));
        assert!(p.sources.is_empty() && p.destinations.is_empty());
        let p = degree_profile(&cycle(4));
        assert_eq!(p.sources, ids(&[0, 1, 2, 3]));
        assert_eq!(p.destinations, p.sources);
        assert!((0..4).all(|v| p.degree(NodeId(v)) == 2));
    }

    #[test]
    fn components_examples() {
        let c = weakly_connected_components(&fig1());
        assert_eq!(c.components.len(), 1);
        assert_eq!(c.components[0].nodes, ids(&[0, 1, 2, 3, 4, 5]));

        let g = DemandGraph::new(4, [(2, 3), (0, 1)]).unwrap();
        let c = weakly_connected_components(&g);
        assert_eq!(c.components.len(), 2);
        assert_eq!(c.components[0].nodes, ids(&[0, 1]));
        assert_eq!(c.components[1].nodes, ids(&[2, 3]));

        let g = DemandGraph::new(5, [(0, 1)]).unwrap();
        let c = weakly_connected_components(&g);
        assert_eq!(c.components.len(), 1);
        assert_eq!(c.isolated, ids(&[2, 3, 4]));
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(lower_bound(&fig1()).global, 3);
        assert_eq!(lower_bound(&DemandGraph::empty(3)).global, 0);
        assert_eq!(lower_bound(&star(3)).global, 3);
        // Two disjoint single demands: global bound 2, component sum 2.
        let g = DemandGraph::new(4, [(0, 1), (2, 3)]).unwrap();
        let lb = lower_bound(&g);
        assert_eq!((lb.global, lb.component_sum), (2, 2));
    }

    fn arb_graph() -> impl Strategy<Value = DemandGraph> {
        (1usize..9).prop_flat_map(|n| {
            proptest::collection::vec((0..n as u64, 0..n as u64), 0..20).prop_map(move |pairs| {
                DemandGraph::new(n, pairs.into_iter().filter(|(a, b)| a != b)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn partition_is_disjoint_and_covering(g in arb_graph()) {
            let part = weakly_connected_components(&g);
            let mut seen = vec![0usize; g.node_count()];
            for c in &part.components {
                for v in &c.nodes { seen[v.index()] += 1; }
                for d in &c.demands {
                    prop_assert!(c.position(d.src).is_some() && c.position(d.dst).is_some());
                }
            }
            for v in &part.isolated { seen[v.index()] += 1; }
            prop_assert!(seen.iter().all(|&k| k == 1));
            let total: usize = part.components.iter().map(|c| c.demands.len()).sum();
            prop_assert_eq!(total, g.demand_count());
            let firsts: Vec<_> = part.components.iter().map(|c| c.nodes[0]).collect();
            prop_assert!(firsts.windows(2).all(|w| w[0] < w[1]));
        }

        #[test]
        fn bound_relations(g in arb_graph()) {
            let lb = lower_bound(&g);
            prop_assert!(lb.global <= g.demand_count());
            prop_assert!(lb.component_sum >= lb.global);
        }
    }
}
