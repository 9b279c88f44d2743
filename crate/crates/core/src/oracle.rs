//! Brute-force ground truth used by the test suites.
//!
//! Two independent implementations exist on purpose: a BFS-per-source
//! all-pairs table, and a backtracking enumerator of simple cycles for tiny
//! graphs, so the main algorithms are never checked against a re-statement of
//! themselves.

use crate::graph::{DirectedGraph, VertexId};
use crate::label::{QueryResult, UNREACHED};
use crate::order::VertexOrdering;
use std::collections::VecDeque;

/// Exact all-pairs shortest distances and path counts.
///
/// Row `s` holds `(dist, count)` per target; counts saturate at `u64::MAX`.
pub struct ApspTable {
    n: usize,
    dist: Vec<u32>,
    count: Vec<u64>,
}

impl ApspTable {
    pub fn dist(&self, s: VertexId, t: VertexId) -> u32 {
        self.dist[s as usize * self.n + t as usize]
    }

    pub fn count(&self, s: VertexId, t: VertexId) -> u64 {
        self.count[s as usize * self.n + t as usize]
    }

    pub fn pair(&self, s: VertexId, t: VertexId) -> QueryResult {
        let d = self.dist(s, t);
        if d == UNREACHED {
            QueryResult::NONE
        } else {
            QueryResult::found(d, self.count(s, t))
        }
    }
}

/// BFS from every source. Intended for test-scale graphs (n <= 4096).
pub fn oracle_apsp(g: &DirectedGraph) -> ApspTable {
    let n = g.vertex_count();
    assert!(n <= 4096, "oracle_apsp is a test oracle, n = {n} too large");
    let mut dist = vec![UNREACHED; n * n];
    let mut count = vec![0u64; n * n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        let row_d = &mut dist[s * n..(s + 1) * n];
        let row_c = &mut count[s * n..(s + 1) * n];
        row_d[s] = 0;
        row_c[s] = 1;
        queue.clear();
        queue.push_back(s as VertexId);
        while let Some(w) = queue.pop_front() {
            let dw = row_d[w as usize];
            let cw = row_c[w as usize];
            for &u in g.out_neighbors(w) {
                let du = &mut row_d[u as usize];
                if *du == UNREACHED {
                    *du = dw + 1;
                    row_c[u as usize] = cw;
                    queue.push_back(u);
                } else if *du == dw + 1 {
                    row_c[u as usize] = row_c[u as usize].saturating_add(cw);
                }
            }
        }
    }
    ApspTable { n, dist, count }
}

/// Shortest-cycle count through `v` by first-hop decomposition over the
/// all-pairs table: a cycle of length `L` through `v` is an edge `v -> w`
/// followed by a shortest `w -> v` path of length `L - 1`, and every
/// shortest cycle is counted exactly once by its first hop.
///
/// `min_len` excludes cycle lengths below it from the candidate set; see the
/// crate notes on 2-cycle handling for what that does and does not mean.
pub fn oracle_sccnt_from_apsp(
    g: &DirectedGraph,
    apsp: &ApspTable,
    v: VertexId,
    min_len: u32,
) -> QueryResult {
    let mut best = UNREACHED;
    let mut total: u64 = 0;
    for &w in g.out_neighbors(v) {
        let d = apsp.dist(w, v);
        if d == UNREACHED {
            continue;
        }
        let len = d + 1;
        if len < min_len || len > best {
            continue;
        }
        if len < best {
            best = len;
            total = apsp.count(w, v);
        } else {
            total = total.saturating_add(apsp.count(w, v));
        }
    }
    if best == UNREACHED {
        QueryResult::NONE
    } else {
        QueryResult::found(best, total)
    }
}

/// Convenience wrapper computing the table on the fly.
pub fn oracle_sccnt(g: &DirectedGraph, v: VertexId, min_len: u32) -> QueryResult {
    oracle_sccnt_from_apsp(g, &oracle_apsp(g), v, min_len)
}

/// Number of shortest `h -> w` paths on which `h` is the top-ranked vertex,
/// computed by dynamic programming over the shortest-path DAG restricted to
/// vertices ranked below `h`. This is the exact value a fresh label entry
/// with hub `h` must carry.
pub fn hub_restricted_count(
    g: &DirectedGraph,
    apsp: &ApspTable,
    ord: &VertexOrdering,
    h: VertexId,
    w: VertexId,
) -> u64 {
    let d_hw = apsp.dist(h, w);
    if d_hw == UNREACHED {
        return 0;
    }
    if h == w {
        return 1;
    }
    // Every vertex of the counted paths, including w, must rank below h.
    if ord.rank(w) <= ord.rank(h) {
        return 0;
    }
    // Vertices on shortest h->w paths, processed by distance from h.
    let mut on_path: Vec<VertexId> = (0..g.vertex_count() as VertexId)
        .filter(|&x| {
            apsp.dist(h, x) != UNREACHED
                && apsp.dist(x, w) != UNREACHED
                && apsp.dist(h, x) + apsp.dist(x, w) == d_hw
        })
        .collect();
    on_path.sort_by_key(|&x| apsp.dist(h, x));
    let mut cnt = vec![0u64; g.vertex_count()];
    cnt[h as usize] = 1;
    for &x in &on_path {
        if x == h || ord.rank(x) <= ord.rank(h) {
            continue;
        }
        let dx = apsp.dist(h, x);
        let mut acc = 0u64;
        for &y in g.in_neighbors(x) {
            if apsp.dist(h, y) != UNREACHED
                && apsp.dist(h, y) + 1 == dx
                && (y == h || ord.rank(y) > ord.rank(h))
            {
                acc = acc.saturating_add(cnt[y as usize]);
            }
        }
        cnt[x as usize] = acc;
    }
    cnt[w as usize]
}

/// All simple cycles through `v` with length >= `min_len`, restricted to the
/// shortest such length. Backtracking enumeration; strictly for tiny graphs.
pub fn enumerate_shortest_cycles(g: &DirectedGraph, v: VertexId, min_len: u32) -> QueryResult {
    let n = g.vertex_count();
    assert!(
        n <= 12,
        "cycle enumeration is exponential, n = {n} too large"
    );
    let mut on_stack = vec![false; n];
    let mut best = UNREACHED;
    let mut count = 0u64;
    on_stack[v as usize] = true;

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        g: &DirectedGraph,
        v: VertexId,
        cur: VertexId,
        len: u32,
        min_len: u32,
        on_stack: &mut [bool],
        best: &mut u32,
        count: &mut u64,
    ) {
        for &u in g.out_neighbors(cur) {
            if u == v {
                let total = len + 1;
                if total < min_len || total > *best {
                    continue;
                }
                if total < *best {
                    *best = total;
                    *count = 1;
                } else {
                    *count += 1;
                }
                continue;
            }
            if on_stack[u as usize] {
                continue;
            }
            // Anything longer than the current best cannot improve it.
            if len + 2 > *best {
                continue;
            }
            on_stack[u as usize] = true;
            dfs(g, v, u, len + 1, min_len, on_stack, best, count);
            on_stack[u as usize] = false;
        }
    }

    dfs(g, v, v, 0, min_len, &mut on_stack, &mut best, &mut count);
    if best == UNREACHED {
        QueryResult::NONE
    } else {
        QueryResult::found(best, count)
    }
}
