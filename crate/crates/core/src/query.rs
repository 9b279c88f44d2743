//! Query evaluation: shortest-path counts from an index, shortest-cycle
//! counts via the cycle index, the neighbor-loop fallback over a path index,
//! and the index-free BFS baseline.
//!
//! # Minimum cycle length
//!
//! [`QueryConfig::min_cycle_len`] excludes short cycles from results. All
//! entry points apply it by the same first-hop rule the oracle uses: a cycle
//! candidate for `v` is an edge `v -> w` plus the shortest `w -> v` return
//! distance, and candidates shorter than the floor are dropped. With the
//! default floor of 3 the only excluded candidates are back-and-forth pairs
//! `v -> w -> v`.
//!
//! The label-only cycle query cannot see per-neighbor structure, so it
//! applies the floor to the combined hub distance instead. The two rules
//! coincide whenever no 2-cycle passes through `v` (in particular everywhere
//! on graphs without mutual edges). When a 2-cycle is present and the floor
//! excludes it, the label evaluation falls back to the next hub level, which
//! is a documented approximation: hub entries only witness shortest paths,
//! so levels above the minimum are not exact. Callers that need the exact
//! filtered answer on such vertices use the neighbor-loop or BFS paths.

use std::cell::Cell;
use std::collections::VecDeque;

use crate::bipartite::{in_half, out_half};
use crate::graph::{DirectedGraph, VertexId};
use crate::label::{IndexMode, LabelIndex, QueryResult, UNREACHED};

/// Knobs shared by the cycle-count entry points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryConfig {
    /// Cycles shorter than this are not reported. 2 reports everything the
    /// graph has; 3 (the default) hides back-and-forth 2-cycles.
    pub min_cycle_len: u32,
}

impl Default for QueryConfig {
    fn default() -> Self {
        Self { min_cycle_len: 3 }
    }
}

impl QueryConfig {
    pub fn unfiltered() -> Self {
        Self { min_cycle_len: 2 }
    }
}

/// Counts the structures a query touched; used to assert access locality.
#[derive(Debug, Default)]
pub struct AccessProbe {
    /// Label lists fetched from an index.
    pub label_lists: Cell<u64>,
    /// Adjacency lists read from a graph.
    pub adjacency_lists: Cell<u64>,
    /// Full path-count evaluations performed.
    pub pair_evals: Cell<u64>,
}

impl AccessProbe {
    fn bump(cell: &Cell<u64>, by: u64) {
        cell.set(cell.get() + by);
    }
}

/// Shortest-path count between two vertices of the indexed graph.
pub fn shortest_path_count(idx: &LabelIndex, s: VertexId, t: VertexId) -> QueryResult {
    shortest_path_count_probed(idx, s, t, &AccessProbe::default())
}

pub fn shortest_path_count_probed(
    idx: &LabelIndex,
    s: VertexId,
    t: VertexId,
    probe: &AccessProbe,
) -> QueryResult {
    AccessProbe::bump(&probe.label_lists, 2);
    AccessProbe::bump(&probe.pair_evals, 1);
    idx.eval(s, t)
}

/// Shortest-cycle count through `v` from a cycle index: one label
/// intersection of `L_out(out_half(v))` and `L_in(in_half(v))`, no adjacency
/// access. A split-graph length `d` maps back to a cycle of `(d + 1) / 2`
/// edges.
pub fn shortest_cycle_count(idx: &LabelIndex, v: VertexId, cfg: QueryConfig) -> QueryResult {
    shortest_cycle_count_probed(idx, v, cfg, &AccessProbe::default())
}

pub fn shortest_cycle_count_probed(
    idx: &LabelIndex,
    v: VertexId,
    cfg: QueryConfig,
    probe: &AccessProbe,
) -> QueryResult {
    assert_eq!(
        idx.mode(),
        IndexMode::Bipartite,
        "cycle queries need a cycle index"
    );
    AccessProbe::bump(&probe.label_lists, 2);
    AccessProbe::bump(&probe.pair_evals, 1);
    let (s, t) = (out_half(v), in_half(v));
    // A cycle of length L appears as a split-graph path of length 2L - 1.
    let floor = cfg.min_cycle_len.saturating_mul(2).saturating_sub(1);
    let r = idx.eval_min_dist(s, t, floor);
    match r.length {
        None => QueryResult::NONE,
        Some(d) => QueryResult {
            length: Some(d.div_ceil(2)),
            count: r.count,
            saturated: r.saturated,
        },
    }
}

/// Shortest-cycle count through `v` from a path index plus the graph:
/// one path-count evaluation per neighbor on the smaller side.
pub fn shortest_cycle_count_via_neighbors(
    idx: &LabelIndex,
    g: &DirectedGraph,
    v: VertexId,
    cfg: QueryConfig,
) -> QueryResult {
    shortest_cycle_count_via_neighbors_probed(idx, g, v, cfg, &AccessProbe::default())
}

pub fn shortest_cycle_count_via_neighbors_probed(
    idx: &LabelIndex,
    g: &DirectedGraph,
    v: VertexId,
    cfg: QueryConfig,
    probe: &AccessProbe,
) -> QueryResult {
    assert_eq!(
        idx.mode(),
        IndexMode::Plain,
        "neighbor-loop cycle queries need a path index"
    );
    // The first-hop length floor is defined over out-neighbors; mirroring to
    // the smaller in-neighbor side is only equivalent when nothing is
    // filtered, so the floor forces the out side.
    let use_out = cfg.min_cycle_len > 2 || g.out_degree(v) < g.in_degree(v);
    AccessProbe::bump(&probe.adjacency_lists, 1);
    let mut best = UNREACHED;
    let mut total: u64 = 0;
    let mut saturated = false;
    let nbrs = if use_out {
        g.out_neighbors(v)
    } else {
        g.in_neighbors(v)
    };
    for &w in nbrs {
        let r = if use_out {
            shortest_path_count_probed(idx, w, v, probe)
        } else {
            shortest_path_count_probed(idx, v, w, probe)
        };
        let Some(d) = r.length else { continue };
        let len = d + 1;
        if len < cfg.min_cycle_len || len > best {
            continue;
        }
        if len < best {
            best = len;
            total = r.count;
            saturated = r.saturated;
        } else {
            let (sum, sat) = crate::label::add_counts(total, r.count);
            total = sum;
            saturated = saturated || r.saturated || sat;
        }
    }
    if best == UNREACHED {
        QueryResult::NONE
    } else {
        QueryResult {
            length: Some(best),
            count: total,
            saturated,
        }
    }
}

/// Index-free baseline: BFS outward from `v`'s out-neighbors, accumulating
/// counts on equal-distance arrivals; the answer is ready when `v` itself is
/// dequeued. `O(n + m)` time.
pub fn shortest_cycle_count_bfs(g: &DirectedGraph, v: VertexId, cfg: QueryConfig) -> QueryResult {
    if cfg.min_cycle_len > 2 {
        return cycle_count_bfs_filtered(g, v, cfg.min_cycle_len);
    }
    let n = g.vertex_count();
    let mut dist = vec![UNREACHED; n];
    let mut cnt = vec![0u64; n];
    let mut queue = VecDeque::new();
    for &u in g.out_neighbors(v) {
        dist[u as usize] = 1;
        cnt[u as usize] = 1;
        queue.push_back(u);
    }
    while let Some(w) = queue.pop_front() {
        if w == v {
            return QueryResult::found(dist[w as usize], cnt[w as usize]);
        }
        let dw = dist[w as usize];
        let cw = cnt[w as usize];
        for &u in g.out_neighbors(w) {
            let du = &mut dist[u as usize];
            if *du == UNREACHED {
                *du = dw + 1;
                cnt[u as usize] = cw;
                queue.push_back(u);
            } else if *du == dw + 1 {
                cnt[u as usize] = cnt[u as usize].saturating_add(cw);
            }
        }
    }
    QueryResult::NONE
}

/// Filtered variant: one reverse BFS from `v` gives every return distance
/// and count, then the first-hop rule runs over the out-neighbors exactly as
/// in the oracle. Same `O(n + m)` bound.
fn cycle_count_bfs_filtered(g: &DirectedGraph, v: VertexId, min_len: u32) -> QueryResult {
    let n = g.vertex_count();
    let mut dist = vec![UNREACHED; n];
    let mut cnt = vec![0u64; n];
    let mut queue = VecDeque::new();
    dist[v as usize] = 0;
    cnt[v as usize] = 1;
    queue.push_back(v);
    while let Some(w) = queue.pop_front() {
        let dw = dist[w as usize];
        let cw = cnt[w as usize];
        for &u in g.in_neighbors(w) {
            if u == v {
                continue;
            }
            let du = &mut dist[u as usize];
            if *du == UNREACHED {
                *du = dw + 1;
                cnt[u as usize] = cw;
                queue.push_back(u);
            } else if *du == dw + 1 {
                cnt[u as usize] = cnt[u as usize].saturating_add(cw);
            }
        }
    }
    let mut best = UNREACHED;
    let mut total: u64 = 0;
    for &w in g.out_neighbors(v) {
        let d = dist[w as usize];
        if d == UNREACHED {
            continue;
        }
        let len = d + 1;
        if len < min_len || len > best {
            continue;
        }
        if len < best {
            best = len;
            total = cnt[w as usize];
        } else {
            total = total.saturating_add(cnt[w as usize]);
        }
    }
    if best == UNREACHED {
        QueryResult::NONE
    } else {
        QueryResult::found(best, total)
    }
}
