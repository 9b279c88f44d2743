//! Vertex ordering: the total order that decides hub eligibility.
//!
//! The order is computed once from the graph the index is built on and then
//! frozen; dynamic updates patch labels under the original ranks.

use crate::bipartite::{in_half, out_half, BipartiteGraph};
use crate::graph::{DirectedGraph, VertexId};

/// Position in the total order; rank 0 is the highest.
pub type Rank = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderingStrategy {
    /// Descending in-degree + out-degree, ties by ascending id.
    #[default]
    DegreeSum,
    /// Descending in-degree * out-degree, ties by ascending id.
    DegreeProduct,
}

/// Frozen total order over the vertices of one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrdering {
    rank_of: Vec<Rank>,
    vertex_at: Vec<VertexId>,
}

impl VertexOrdering {
    pub fn from_ranks(rank_of: Vec<Rank>) -> Self {
        let mut vertex_at = vec![0; rank_of.len()];
        for (v, &r) in rank_of.iter().enumerate() {
            vertex_at[r as usize] = v as VertexId;
        }
        Self { rank_of, vertex_at }
    }

    pub fn len(&self) -> usize {
        self.rank_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank_of.is_empty()
    }

    pub fn rank(&self, v: VertexId) -> Rank {
        self.rank_of[v as usize]
    }

    pub fn vertex_at(&self, r: Rank) -> VertexId {
        self.vertex_at[r as usize]
    }

    pub fn ranks(&self) -> &[Rank] {
        &self.rank_of
    }

    /// Vertices from highest rank to lowest.
    pub fn by_rank(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertex_at.iter().copied()
    }

    /// `a` ranks strictly higher than `b`.
    pub fn precedes(&self, a: VertexId, b: VertexId) -> bool {
        self.rank(a) < self.rank(b)
    }
}

fn degree_key(g: &DirectedGraph, v: VertexId, strategy: OrderingStrategy) -> u64 {
    let din = g.in_degree(v) as u64;
    let dout = g.out_degree(v) as u64;
    match strategy {
        OrderingStrategy::DegreeSum => din + dout,
        OrderingStrategy::DegreeProduct => din * dout,
    }
}

/// Degree order over a plain graph.
pub fn compute_ordering(g: &DirectedGraph, strategy: OrderingStrategy) -> VertexOrdering {
    let mut by_key: Vec<VertexId> = (0..g.vertex_count() as VertexId).collect();
    by_key.sort_by_key(|&v| (std::cmp::Reverse(degree_key(g, v, strategy)), v));
    let mut rank_of = vec![0; g.vertex_count()];
    for (r, &v) in by_key.iter().enumerate() {
        rank_of[v as usize] = r as Rank;
    }
    VertexOrdering::from_ranks(rank_of)
}

/// Order over a split graph: half-pairs take consecutive ranks in the order
/// of their original vertex, with the incoming half directly above the
/// outgoing half.
pub fn compute_bipartite_ordering(
    gb: &BipartiteGraph,
    strategy: OrderingStrategy,
) -> VertexOrdering {
    let base = gb.base();
    let n = gb.original_count();
    // Original degrees are recoverable from the split graph: the outgoing
    // half carries exactly the original out-edges and the incoming half
    // exactly the original in-edges.
    let mut by_key: Vec<VertexId> = (0..n as VertexId).collect();
    by_key.sort_by_key(|&v| {
        let din = base.in_degree(in_half(v)) as u64;
        let dout = base.out_degree(out_half(v)) as u64;
        let key = match strategy {
            OrderingStrategy::DegreeSum => din + dout,
            OrderingStrategy::DegreeProduct => din * dout,
        };
        (std::cmp::Reverse(key), v)
    });
    let mut rank_of = vec![0; 2 * n];
    for (r, &v) in by_key.iter().enumerate() {
        rank_of[in_half(v) as usize] = (2 * r) as Rank;
        rank_of[out_half(v) as usize] = (2 * r + 1) as Rank;
    }
    VertexOrdering::from_ranks(rank_of)
}
