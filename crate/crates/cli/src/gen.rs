//! Fixture generators.

use pigeon_core::reductions::UndirectedGraph;
use pigeon_core::DemandGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EXAMPLE_CNF: &str = "c (x1 | -x3 | x2) & (x3 | x4 | x5)\np cnf 5 2\n1 -3 2 0\n3 4 5 0\n";

pub enum Generated {
    Demand(DemandGraph),
    Undirected(UndirectedGraph),
    Cnf(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum GenKind {
    /// Demands (i, i+1 mod n).
    Cycle,
    /// Demands from node 0 to every other node.
    Star,
    /// Demands (i, i+1) for i < n-1.
    Path,
    /// Every ordered pair.
    Complete,
    /// Three sources and three destinations; the coordinator example.
    Fig1,
    /// Directed G(n, p) from a seeded generator.
    Random,
    /// Undirected four-node vertex cover example.
    VcExample,
    /// The two-clause 3-CNF example in DIMACS form.
    CnfExample,
}

pub fn generate(kind: GenKind, n: usize, p: f64, seed: u64) -> Result<Generated, String> {
    let needs = |min: usize| {
        if n < min {
            Err(format!("--n must be at least {min} for this generator"))
        } else {
            Ok(())
        }
    };
    let graph = |pairs: Vec<(u64, u64)>| DemandGraph::new(n, pairs).map(Generated::Demand).map_err(|e| e.to_string());
    let m = n as u64;
    match kind {
        GenKind::Cycle => {
            needs(2)?;
            graph((0..m).map(|i| (i, (i + 1) % m)).collect())
        }
        GenKind::Star => {
            needs(2)?;
            graph((1..m).map(|j| (0, j)).collect())
        }
        GenKind::Path => {
            needs(2)?;
            graph((1..m).map(|j| (j - 1, j)).collect())
        }
        GenKind::Complete => graph((0..m).flat_map(|a| (0..m).filter(move |&b| b != a).map(move |b| (a, b))).collect()),
        GenKind::Fig1 => DemandGraph::new(6, [(0, 3), (0, 4), (0, 5), (1, 4), (1, 5), (2, 3)])
            .map(Generated::Demand)
            .map_err(|e| e.to_string()),
        GenKind::Random => {
            if !(0.0..=1.0).contains(&p) {
                return Err(format!("--p must lie in [0, 1], got {p}"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pairs = Vec::new();
            for a in 0..m {
                for b in 0..m {
                    if a != b && rng.gen_bool(p) {
                        pairs.push((a, b));
                    }
                }
            }
            graph(pairs)
        }
        GenKind::VcExample => UndirectedGraph::new(4, [(0, 1), (1, 2), (0, 2), (0, 3)])
            .map(Generated::Undirected)
            .map_err(|e| e.to_string()),
        GenKind::CnfExample => Ok(Generated::Cnf(EXAMPLE_CNF.to_string())),
    }
}
