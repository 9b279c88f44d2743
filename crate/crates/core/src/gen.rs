//! Deterministic synthetic graph generators for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{DirectedGraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphModel {
    /// Uniform random simple digraph with `n` vertices and (about) `m` edges.
    Erdos,
    /// Directed path `0 -> 1 -> ... -> n-1`; acyclic by construction.
    Chain,
    /// Planted high-min-degree vertices on short cycles over a sparse
    /// background, for stressing per-neighbor query evaluation.
    StarCycles,
}

impl std::str::FromStr for GraphModel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "erdos" => Ok(GraphModel::Erdos),
            "chain" => Ok(GraphModel::Chain),
            "star-cycles" => Ok(GraphModel::StarCycles),
            other => Err(format!("unknown graph model {other:?}")),
        }
    }
}

pub fn generate(model: GraphModel, n: usize, m: usize, seed: u64) -> DirectedGraph {
    match model {
        GraphModel::Erdos => erdos(n, m, seed),
        GraphModel::Chain => chain(n),
        GraphModel::StarCycles => star_cycles(n, m, seed),
    }
}

/// Uniform simple digraph: `m` distinct non-loop edges, capped at `n(n-1)`.
pub fn erdos(n: usize, m: usize, seed: u64) -> DirectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = DirectedGraph::new(n);
    if n < 2 {
        return g;
    }
    let max_m = n * (n - 1);
    let m = m.min(max_m);
    while g.edge_count() < m {
        let a = rng.random_range(0..n) as VertexId;
        let b = rng.random_range(0..n) as VertexId;
        if a != b {
            let _ = g.insert_edge(a, b);
        }
    }
    g
}

pub fn chain(n: usize) -> DirectedGraph {
    let mut g = DirectedGraph::new(n);
    for v in 1..n {
        let _ = g.insert_edge((v - 1) as VertexId, v as VertexId);
    }
    g
}

/// Hub-and-spoke graph with planted degree tiers.
///
/// A few planted hubs get `D` outgoing spokes and `D` incoming spokes with
/// the spokes cross-wired (`h -> s_i -> t_p(i) -> h`), so each hub sits on
/// `D` cycles of length 3 and has min-in-out degree `D`. Tiers at fractions
/// of the maximum degree populate the middle of the degree range; the
/// remaining vertices form many small rings of seeded sizes, which keeps the
/// bottom clusters populated without inflating label sizes the way a flat
/// random background would. `m` is a cap, not a target.
pub fn star_cycles(n: usize, m: usize, seed: u64) -> DirectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = DirectedGraph::new(n);
    if n < 8 {
        return erdos(n, m, seed);
    }
    let max_deg = (n / 40).clamp(2, 500);
    // Two hubs per tier; fractions of the top degree spread the tiers over
    // the degree range.
    let tiers = [1.0f64, 0.7, 0.5, 0.3];
    let mut next = 0 as VertexId;
    let alloc = |k: usize, next: &mut VertexId| -> Option<Vec<VertexId>> {
        if (*next as usize) + k > n {
            return None;
        }
        let ids: Vec<VertexId> = (*next..*next + k as VertexId).collect();
        *next += k as VertexId;
        Some(ids)
    };
    'tiers: for &frac in &tiers {
        let d = ((max_deg as f64) * frac).round().max(1.0) as usize;
        for _ in 0..2 {
            let Some(hub) = alloc(1, &mut next) else {
                break 'tiers;
            };
            let Some(out_spokes) = alloc(d, &mut next) else {
                break 'tiers;
            };
            let Some(in_spokes) = alloc(d, &mut next) else {
                break 'tiers;
            };
            let hub = hub[0];
            let mut wiring: Vec<usize> = (0..d).collect();
            // Seeded shuffle: pick without replacement.
            for i in (1..d).rev() {
                let j = rng.random_range(0..=i);
                wiring.swap(i, j);
            }
            for (i, &s) in out_spokes.iter().enumerate() {
                let t = in_spokes[wiring[i]];
                let _ = g.insert_edge(hub, s);
                let _ = g.insert_edge(s, t);
                let _ = g.insert_edge(t, hub);
            }
        }
    }
    // Background: small disjoint rings with seeded sizes.
    while (next as usize) < n && g.edge_count() < m {
        let want = rng.random_range(3..=40usize).min(n - next as usize);
        let Some(ring) = alloc(want, &mut next) else {
            break;
        };
        if ring.len() < 2 {
            break;
        }
        for i in 0..ring.len() {
            let _ = g.insert_edge(ring[i], ring[(i + 1) % ring.len()]);
        }
    }
    g
}

/// Formats a graph as the text edge-list the loader reads back.
pub fn to_edge_list(g: &DirectedGraph) -> String {
    let mut out = String::new();
    for (a, b) in g.edges() {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}
