//! Shortest-cycle counting on dynamic directed graphs.
//!
//! The library answers two query families over an unweighted directed graph:
//!
//! * `SPCnt(s, t)` — the length and number of shortest `s -> t` paths, and
//! * `SCCnt(v)` — the length and number of shortest cycles through `v`,
//!
//! both from a 2-hop hub-label index that is patched in place under edge
//! insertions and deletions instead of being rebuilt.
//!
//! Cycle queries work on a split graph: every vertex `v` becomes an incoming
//! half `v_in` and an outgoing half `v_out` joined by `v_in -> v_out`, and
//! every edge `(v, w)` becomes `(v_out, w_in)`. A cycle through `v` is then a
//! plain path `v_out -> v_in`, so one label intersection answers the query
//! without touching adjacency lists.
//!
//! # Concurrency
//!
//! The types follow the usual Rust aliasing contract and nothing else:
//! queries borrow a [`label::LabelIndex`] immutably and may run from any
//! number of threads, while [`dynamic`] updates take `&mut` and therefore
//! exclude readers for their duration. All core types are `Send + Sync`.

pub mod bench;
pub mod bipartite;
pub mod builder;
pub mod codec;
pub mod dynamic;
pub mod gen;
pub mod graph;
pub mod io;
pub mod label;
pub mod oracle;
pub mod order;
pub mod query;
pub mod samples;

pub use bipartite::BipartiteGraph;
pub use graph::{DirectedGraph, VertexId};
pub use label::{LabelEntry, LabelIndex, QueryResult};
pub use order::VertexOrdering;

// Queries share indexes across threads; updates require exclusive access.
const _: () = {
    const fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<DirectedGraph>();
    assert_send_sync::<BipartiteGraph>();
    assert_send_sync::<LabelIndex>();
};
