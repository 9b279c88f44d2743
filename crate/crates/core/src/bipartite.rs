//! Vertex-splitting conversion used by the cycle index.
//!
//! Every original vertex `v` becomes two halves: an incoming half that
//! receives all of `v`'s in-edges and an outgoing half that carries all of
//! its out-edges, joined by one edge `in_half(v) -> out_half(v)`. Each
//! original edge `(v, w)` becomes `(out_half(v), in_half(w))`. The result is
//! bipartite between the outgoing and incoming sides (plus the half-pair
//! edges), and a cycle through `v` of length `L` corresponds one-to-one to a
//! path `out_half(v) -> in_half(v)` of length `2L - 1`.

use crate::graph::{DirectedGraph, GraphError, VertexId};

/// Which side of the split a vertex of the converted graph lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Carries the original in-edges; even ids.
    Incoming,
    /// Carries the original out-edges; odd ids.
    Outgoing,
}

/// The split graph. Halves are interleaved: `in_half(v) = 2v`,
/// `out_half(v) = 2v + 1`, so a pair occupies adjacent ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    base: DirectedGraph,
    original_n: usize,
}

pub fn in_half(v: VertexId) -> VertexId {
    2 * v
}

pub fn out_half(v: VertexId) -> VertexId {
    2 * v + 1
}

/// The other member of a half-pair.
pub fn other_half(x: VertexId) -> VertexId {
    x ^ 1
}

pub fn side(x: VertexId) -> Side {
    if x & 1 == 0 {
        Side::Incoming
    } else {
        Side::Outgoing
    }
}

/// Original vertex a half belongs to.
pub fn original(x: VertexId) -> VertexId {
    x / 2
}

/// Splits every vertex of `g` into a half-pair.
///
/// The conversion has `2n` vertices and `n + m` edges.
pub fn bipartite_convert(g: &DirectedGraph) -> BipartiteGraph {
    let n = g.vertex_count();
    let mut base = DirectedGraph::new(2 * n);
    for v in 0..n as VertexId {
        base.insert_edge(in_half(v), out_half(v))
            .expect("half-pair edge");
    }
    for (v, w) in g.edges() {
        base.insert_edge(out_half(v), in_half(w))
            .expect("split edge");
    }
    BipartiteGraph {
        base,
        original_n: n,
    }
}

impl BipartiteGraph {
    /// The split graph as a plain directed graph.
    pub fn base(&self) -> &DirectedGraph {
        &self.base
    }

    /// Number of vertices of the original graph.
    pub fn original_count(&self) -> usize {
        self.original_n
    }

    /// Split-graph endpoints for an original edge `(v, w)`.
    pub fn map_edge(&self, v: VertexId, w: VertexId) -> (VertexId, VertexId) {
        (out_half(v), in_half(w))
    }

    /// Inserts the original edge `(v, w)`, mirroring it into the split graph.
    /// Half-pair edges are never touched by updates.
    pub fn insert_original_edge(&mut self, v: VertexId, w: VertexId) -> Result<bool, GraphError> {
        if v == w {
            return Err(GraphError::SelfLoop(v));
        }
        let (a, b) = self.map_edge(v, w);
        self.base.insert_edge(a, b)
    }

    /// Deletes the original edge `(v, w)` from the split graph.
    pub fn delete_original_edge(&mut self, v: VertexId, w: VertexId) -> Result<bool, GraphError> {
        if v == w {
            return Err(GraphError::SelfLoop(v));
        }
        let (a, b) = self.map_edge(v, w);
        self.base.delete_edge(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn triangle_conversion_counts() {
        let g = DirectedGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        let gb = bipartite_convert(&g);
        assert_eq!(gb.base().vertex_count(), 6);
        assert_eq!(gb.base().edge_count(), 6);
    }

    #[test]
    fn demo_conversion_counts() {
        let g = samples::demo_graph();
        let gb = bipartite_convert(&g);
        assert_eq!(gb.base().vertex_count(), 20);
        assert_eq!(gb.base().edge_count(), 23);
    }

    #[test]
    fn single_edge_layout() {
        let g = DirectedGraph::from_edges(2, &[(0, 1)]);
        let gb = bipartite_convert(&g);
        assert_eq!(gb.base().vertex_count(), 4);
        assert_eq!(gb.base().edge_count(), 3);
        assert!(gb.base().has_edge(in_half(0), out_half(0)));
        assert!(gb.base().has_edge(in_half(1), out_half(1)));
        assert!(gb.base().has_edge(out_half(0), in_half(1)));
    }

    #[test]
    fn half_pair_mapping_is_involutive() {
        for x in 0..10 {
            assert_eq!(other_half(other_half(x)), x);
            assert_eq!(original(in_half(x)), x);
            assert_eq!(original(out_half(x)), x);
        }
        assert_eq!(side(in_half(3)), Side::Incoming);
        assert_eq!(side(out_half(3)), Side::Outgoing);
    }

    #[test]
    fn edges_partition_by_side() {
        let g = samples::demo_graph();
        let gb = bipartite_convert(&g);
        for (a, b) in gb.base().edges() {
            match (side(a), side(b)) {
                (Side::Incoming, Side::Outgoing) => assert_eq!(other_half(a), b),
                (Side::Outgoing, Side::Incoming) => {
                    assert!(g.has_edge(original(a), original(b)))
                }
                _ => panic!("edge ({a}, {b}) stays on one side"),
            }
        }
    }
}
