//! Small fixture graphs shared by tests, docs, and the CLI examples.

use crate::graph::{DirectedGraph, VertexId};

/// Edges of the 10-vertex demo graph used throughout the test suite.
///
/// Vertex 0 fans out to three branches that funnel into vertex 6, the chain
/// `6 -> 7 -> 8 -> 9` leads back, and 9 closes the loop to 0 (and to the side
/// branch through 1). The shortest cycles have length 6 and overlap heavily,
/// which exercises non-trivial path counting.
pub const DEMO_EDGES: [(VertexId, VertexId); 13] = [
    (0, 2),
    (0, 3),
    (0, 4),
    (1, 3),
    (2, 5),
    (3, 6),
    (4, 6),
    (5, 6),
    (6, 7),
    (7, 8),
    (8, 9),
    (9, 0),
    (9, 1),
];

/// The demo graph: 10 vertices, 13 edges, no 2-cycles.
pub fn demo_graph() -> DirectedGraph {
    DirectedGraph::from_edges(10, &DEMO_EDGES)
}

/// Degree order of the demo graph (highest rank first).
pub fn demo_expected_order() -> Vec<VertexId> {
    vec![0, 6, 3, 9, 1, 2, 4, 5, 7, 8]
}
