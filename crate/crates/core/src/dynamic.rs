//! In-place index maintenance under edge insertions and deletions.
//!
//! Insertion works hub-by-hub over the *affected hubs* of the new edge
//! `(a, b)`: the hubs recorded in `L_in(a)` and `L_out(b)`. Any new shortest
//! path created by the edge decomposes into a shortest prefix into `a` and a
//! shortest suffix out of `b`, and its top-ranked vertex tops whichever part
//! contains it, so the cover of the old index guarantees that vertex is in
//! one of the two lists. Hubs run from highest rank to lowest so each pass
//! queries an index in which every higher hub is already settled; the pass
//! is a pruned BFS behind the new edge, seeded with the hub's own label
//! entry at `a` (or `b`). That count covers exactly the shortest paths on
//! which the hub is top-ranked, so no path owned by a higher hub is counted
//! twice.
//!
//! Deletion runs in three steps. First find every hub whose pre-deletion
//! shortest path towards `b` ran through the deleted edge
//! (`sd(h, a) + 1 <= sd_without_edge(h, b)`, from plain BFS passes on the
//! post-deletion graph: paths into `a` and out of `b` cannot have used the
//! edge, so those distances survive it), and symmetrically from `b`. The
//! label lists of `a` and `b` are not enough here: a hub may newly *become*
//! responsible for a pair only after the edge disappears, or hold a
//! dominated entry that surfaces once distances grow, without ever appearing
//! in those lists, so all vertices are tested. Second, through the inverted
//! indexes, drop every entry of an affected hub whose stored distance is at
//! least the route through the deleted edge; that is a superset of the truly
//! stale entries. Third, re-run the construction pass for each affected hub
//! on the new graph, highest rank first, merging with what survived.
//!
//! Under [`UpdateStrategy::Redundancy`] insertion leaves entries whose
//! stored distance is no longer tight in place; they are dominated at query
//! time and harmless. [`UpdateStrategy::Minimality`] removes them through
//! the inverted indexes as soon as a replacement is written.

use std::collections::VecDeque;
use std::time::Instant;

use crate::bipartite::{side, Side};
use crate::graph::{DirectedGraph, VertexId};
use crate::label::{IndexMode, LabelEntry, LabelIndex, LabelSide, UpsertOutcome, UNREACHED};
use crate::order::Rank;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UpdateStrategy {
    /// Leave distance-dominated entries behind; fast, query-equivalent.
    #[default]
    Redundancy,
    /// Purge every entry that stops being tight; keeps the index minimal.
    Minimality,
}

impl std::fmt::Display for UpdateStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UpdateStrategy::Redundancy => write!(f, "redundancy"),
            UpdateStrategy::Minimality => write!(f, "minimality"),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct UpdateConfig {
    pub strategy: UpdateStrategy,
}

/// What one update did, for reporting and the bench harness.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct UpdateStats {
    pub labels_inserted: usize,
    pub labels_replaced: usize,
    pub labels_accumulated: usize,
    pub labels_deleted: usize,
    pub vertices_visited: usize,
    pub micros: u128,
}

/// Hub eligible to push labels in this index: any vertex for a plain index,
/// incoming halves only for a bipartite one (outgoing halves never label
/// anything beyond themselves).
fn eligible_hub(idx: &LabelIndex, v: VertexId) -> bool {
    match idx.mode() {
        IndexMode::Plain => true,
        IndexMode::Bipartite => side(v) == Side::Incoming,
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AffectedHub {
    pub rank: Rank,
    pub in_hub_a: bool,
    pub in_hub_b: bool,
}

/// The hubs an insertion of `(a, b)` may touch: hubs of `L_in(a)` and
/// `L_out(b)`, merged, highest rank first.
pub fn affected_hubs(idx: &LabelIndex, a: VertexId, b: VertexId) -> Vec<AffectedHub> {
    let mut hubs: Vec<AffectedHub> = Vec::new();
    for e in idx.in_label(a) {
        if eligible_hub(idx, idx.ordering().vertex_at(e.hub_rank)) {
            hubs.push(AffectedHub {
                rank: e.hub_rank,
                in_hub_a: true,
                in_hub_b: false,
            });
        }
    }
    for e in idx.out_label(b) {
        if !eligible_hub(idx, idx.ordering().vertex_at(e.hub_rank)) {
            continue;
        }
        match hubs.binary_search_by_key(&e.hub_rank, |h| h.rank) {
            Ok(i) => hubs[i].in_hub_b = true,
            Err(i) => hubs.insert(
                i,
                AffectedHub {
                    rank: e.hub_rank,
                    in_hub_a: false,
                    in_hub_b: true,
                },
            ),
        }
    }
    hubs
}

/// Patches the index after edge `(a, b)` was inserted into `g`.
///
/// `g` must be the indexed graph (the split graph for a cycle index) and
/// `(a, b)` its endpoints (`BipartiteGraph::map_edge` maps an original
/// edge); the edge must already be present in `g`.
pub fn apply_insertion(
    idx: &mut LabelIndex,
    g: &DirectedGraph,
    a: VertexId,
    b: VertexId,
    cfg: UpdateConfig,
) -> UpdateStats {
    insertion_impl(idx, g, a, b, cfg, false)
}

/// Test support: the insertion patch with affected hubs processed lowest
/// rank first, violating the descending-order contract.
#[doc(hidden)]
pub fn apply_insertion_ascending(
    idx: &mut LabelIndex,
    g: &DirectedGraph,
    a: VertexId,
    b: VertexId,
    cfg: UpdateConfig,
) -> UpdateStats {
    insertion_impl(idx, g, a, b, cfg, true)
}

fn insertion_impl(
    idx: &mut LabelIndex,
    g: &DirectedGraph,
    a: VertexId,
    b: VertexId,
    cfg: UpdateConfig,
    ascending: bool,
) -> UpdateStats {
    let started = Instant::now();
    debug_assert!(g.has_edge(a, b));
    let mut stats = UpdateStats::default();
    let mut hubs = affected_hubs(idx, a, b);
    if ascending {
        hubs.reverse();
    }
    let mut pass = Scratch::new(g.vertex_count());
    let rank_a = idx.ordering().rank(a);
    let rank_b = idx.ordering().rank(b);
    for hub in &hubs {
        // Re-read the seed at pass time: labels into `a` / out of `b` cannot
        // be affected by this edge, but a minimality clean may have dropped
        // a dominated seed entry, in which case higher hubs own every path
        // this hub could have pushed.
        if hub.in_hub_a && hub.rank < rank_b {
            if let Some(e) = idx.find(LabelSide::In, a, hub.rank).copied() {
                pass.resume(
                    idx,
                    g,
                    cfg,
                    LabelSide::In,
                    hub.rank,
                    b,
                    e.dist + 1,
                    e.count,
                    &mut stats,
                );
            }
        }
        if hub.in_hub_b && hub.rank < rank_a {
            if let Some(e) = idx.find(LabelSide::Out, b, hub.rank).copied() {
                pass.resume(
                    idx,
                    g,
                    cfg,
                    LabelSide::Out,
                    hub.rank,
                    a,
                    e.dist + 1,
                    e.count,
                    &mut stats,
                );
            }
        }
    }
    stats.micros = started.elapsed().as_micros();
    stats
}

/// Patches the index after edge `(a, b)` was deleted from `g`.
///
/// The edge must already be gone from `g`; the index still reflects the
/// pre-deletion graph when this is called.
pub fn apply_deletion(
    idx: &mut LabelIndex,
    g: &DirectedGraph,
    a: VertexId,
    b: VertexId,
    cfg: UpdateConfig,
) -> UpdateStats {
    deletion_impl(idx, g, a, b, cfg, false)
}

/// Test support: the deletion patch with the restoration passes run lowest
/// rank first. The restore pruning reads entries of higher-ranked hubs, so
/// this order violation must be able to corrupt the result.
#[doc(hidden)]
pub fn apply_deletion_ascending(
    idx: &mut LabelIndex,
    g: &DirectedGraph,
    a: VertexId,
    b: VertexId,
    cfg: UpdateConfig,
) -> UpdateStats {
    deletion_impl(idx, g, a, b, cfg, true)
}

fn deletion_impl(
    idx: &mut LabelIndex,
    g: &DirectedGraph,
    a: VertexId,
    b: VertexId,
    cfg: UpdateConfig,
    ascending: bool,
) -> UpdateStats {
    let started = Instant::now();
    debug_assert!(!g.has_edge(a, b));
    let mut stats = UpdateStats::default();

    // Pre-deletion distances, recovered from the post-deletion graph: a
    // simple path into `a` or out of `b` cannot have used `(a, b)` without
    // revisiting an endpoint, so `sd(., a)` and `sd(b, .)` are unchanged by
    // the deletion, and routes through the old edge are `sd(., a) + 1` and
    // `sd(b, .) + 1`.
    let into_a = bfs_distances(g, a, Direction::Reverse);
    let into_b = bfs_distances(g, b, Direction::Reverse);
    let from_b = bfs_distances(g, b, Direction::Forward);
    let from_a = bfs_distances(g, a, Direction::Forward);

    // Step 1: affected hubs. Forward: hubs whose pre-deletion shortest path
    // to `b` continued through the edge (`sd(h, a) + 1 <=` any alternative);
    // backward: the mirror towards `a`. Equality matters too: an equal-length
    // alternative keeps distances but loses path counts.
    let mut forward_hubs: Vec<(Rank, u32)> = Vec::new();
    let mut backward_hubs: Vec<(Rank, u32)> = Vec::new();
    for h in 0..idx.vertex_count() as VertexId {
        if !eligible_hub(idx, h) {
            continue;
        }
        let d_ha = into_a[h as usize];
        if d_ha != UNREACHED && d_ha < into_b[h as usize] {
            forward_hubs.push((idx.ordering().rank(h), d_ha));
        }
        let d_bh = from_b[h as usize];
        if d_bh != UNREACHED && d_bh < from_a[h as usize] {
            backward_hubs.push((idx.ordering().rank(h), d_bh));
        }
    }
    forward_hubs.sort_unstable();
    backward_hubs.sort_unstable();

    // Step 2: through the inverted indexes, collect every entry of an
    // affected hub whose stored distance is at least the route through the
    // deleted edge. `==` is the stale case; `>` catches dominated leftovers
    // that would surface once the true distance grows to meet them. The
    // whole batch drops at once before any restoration runs.
    let mut doomed: Vec<(LabelSide, VertexId, Rank)> = Vec::new();
    for &(rank, d_ha) in &forward_hubs {
        let h = idx.ordering().vertex_at(rank);
        for &w in idx.inverted_in(h) {
            let e = idx.find(LabelSide::In, w, rank).expect("inverted entry");
            if e.dist == 0 {
                continue;
            }
            let d_bw = from_b[w as usize];
            if d_bw != UNREACHED && e.dist >= d_ha + 1 + d_bw {
                doomed.push((LabelSide::In, w, rank));
            }
        }
    }
    for &(rank, d_bh) in &backward_hubs {
        let h = idx.ordering().vertex_at(rank);
        for &w in idx.inverted_out(h) {
            let e = idx.find(LabelSide::Out, w, rank).expect("inverted entry");
            if e.dist == 0 {
                continue;
            }
            let d_wa = into_a[w as usize];
            if d_wa != UNREACHED && e.dist >= d_wa + 1 + d_bh {
                doomed.push((LabelSide::Out, w, rank));
            }
        }
    }
    for &(label_side, w, rank) in &doomed {
        idx.remove(label_side, w, rank);
        stats.labels_deleted += 1;
    }

    // Step 3: construction-style passes for the affected hubs on the new
    // graph. Forward and backward interleave in descending rank order so
    // every pass sees all higher-ranked hubs fully restored.
    let mut restore: Vec<(Rank, bool, bool)> = forward_hubs
        .iter()
        .map(|&(r, _)| (r, true, false))
        .collect();
    for &(rank, _) in &backward_hubs {
        match restore.binary_search_by_key(&rank, |r| r.0) {
            Ok(i) => restore[i].2 = true,
            Err(i) => restore.insert(i, (rank, false, true)),
        }
    }
    if ascending {
        restore.reverse();
    }
    let mut pass = Scratch::new(g.vertex_count());
    for &(rank, fwd, bwd) in &restore {
        if fwd {
            pass.rebuild(idx, g, cfg, LabelSide::In, rank, &mut stats);
        }
        if bwd {
            pass.rebuild(idx, g, cfg, LabelSide::Out, rank, &mut stats);
        }
    }
    stats.micros = started.elapsed().as_micros();
    stats
}

#[derive(Clone, Copy)]
enum Direction {
    Forward,
    Reverse,
}

/// Single-source unweighted distances over the raw graph.
fn bfs_distances(g: &DirectedGraph, source: VertexId, dir: Direction) -> Vec<u32> {
    let mut dist = vec![UNREACHED; g.vertex_count()];
    let mut queue = VecDeque::new();
    dist[source as usize] = 0;
    queue.push_back(source);
    while let Some(w) = queue.pop_front() {
        let dw = dist[w as usize];
        let nbrs = match dir {
            Direction::Forward => g.out_neighbors(w),
            Direction::Reverse => g.in_neighbors(w),
        };
        for &u in nbrs {
            if dist[u as usize] == UNREACHED {
                dist[u as usize] = dw + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

/// Reusable BFS scratch for the update passes.
struct Scratch {
    dist: Vec<u32>,
    cnt: Vec<u64>,
    touched: Vec<VertexId>,
    queue: VecDeque<VertexId>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Self {
            dist: vec![UNREACHED; n],
            cnt: vec![0; n],
            touched: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    fn reset(&mut self) {
        for v in self.touched.drain(..) {
            self.dist[v as usize] = UNREACHED;
            self.cnt[v as usize] = 0;
        }
        self.queue.clear();
    }

    fn expand(
        &mut self,
        g: &DirectedGraph,
        idx: &LabelIndex,
        from: VertexId,
        hub_rank: Rank,
        label_side: LabelSide,
    ) {
        let d = self.dist[from as usize];
        let c = self.cnt[from as usize];
        let nbrs = match label_side {
            LabelSide::In => g.out_neighbors(from),
            LabelSide::Out => g.in_neighbors(from),
        };
        for &u in nbrs {
            if idx.ordering().rank(u) <= hub_rank {
                continue;
            }
            let du = &mut self.dist[u as usize];
            if *du == UNREACHED {
                *du = d + 1;
                self.cnt[u as usize] = c;
                self.queue.push_back(u);
                self.touched.push(u);
            } else if *du == d + 1 {
                self.cnt[u as usize] = self.cnt[u as usize].saturating_add(c);
            }
        }
    }

    /// Insertion pass: BFS from the far endpoint of the new edge, pruned
    /// wherever the tentative distance is strictly worse than what the index
    /// already answers for the pair.
    #[allow(clippy::too_many_arguments)]
    fn resume(
        &mut self,
        idx: &mut LabelIndex,
        g: &DirectedGraph,
        cfg: UpdateConfig,
        label_side: LabelSide,
        hub_rank: Rank,
        start: VertexId,
        seed_dist: u32,
        seed_cnt: u64,
        stats: &mut UpdateStats,
    ) {
        let hub = idx.ordering().vertex_at(hub_rank);
        debug_assert!(idx.ordering().rank(start) > hub_rank);
        self.dist[start as usize] = seed_dist;
        self.cnt[start as usize] = seed_cnt;
        self.touched.push(start);
        self.queue.push_back(start);
        while let Some(w) = self.queue.pop_front() {
            stats.vertices_visited += 1;
            let dw = self.dist[w as usize];
            let answered = match label_side {
                LabelSide::In => idx.distance(hub, w),
                LabelSide::Out => idx.distance(w, hub),
            };
            if dw > answered {
                continue;
            }
            merge_entry(
                idx,
                label_side,
                w,
                hub_rank,
                dw,
                self.cnt[w as usize],
                cfg,
                stats,
            );
            self.expand(g, idx, w, hub_rank, label_side);
        }
        self.reset();
    }

    /// Deletion pass: prunes like the construction BFS against strictly
    /// higher-ranked hubs (over all their entries, since survivor flags may
    /// be stale), but entries overwrite in place instead of appending.
    /// Everything it writes is freshly counted on the current graph, so an
    /// existing entry is set, not accumulated.
    fn rebuild(
        &mut self,
        idx: &mut LabelIndex,
        g: &DirectedGraph,
        _cfg: UpdateConfig,
        label_side: LabelSide,
        hub_rank: Rank,
        stats: &mut UpdateStats,
    ) {
        let hub = idx.ordering().vertex_at(hub_rank);
        self.dist[hub as usize] = 0;
        self.cnt[hub as usize] = 1;
        self.touched.push(hub);
        self.queue.push_back(hub);
        while let Some(w) = self.queue.pop_front() {
            stats.vertices_visited += 1;
            let dw = self.dist[w as usize];
            let q = match label_side {
                LabelSide::In => idx.distance_above(hub, w, hub_rank),
                LabelSide::Out => idx.distance_above(w, hub, hub_rank),
            };
            if q < dw {
                continue;
            }
            if w != hub {
                let entry = LabelEntry {
                    hub_rank,
                    dist: dw,
                    count: self.cnt[w as usize],
                    canonical: q > dw,
                };
                match idx.set(label_side, w, entry) {
                    true => stats.labels_inserted += 1,
                    false => stats.labels_replaced += 1,
                }
            }
            self.expand(g, idx, w, hub_rank, label_side);
        }
        self.reset();
    }
}

/// Merges one discovered entry into `L_side(w)` during insertion,
/// recomputing the canonical flag from the settled higher-ranked part of
/// the index, and cleaning newly-dominated entries under minimality.
#[allow(clippy::too_many_arguments)]
fn merge_entry(
    idx: &mut LabelIndex,
    label_side: LabelSide,
    w: VertexId,
    hub_rank: Rank,
    dist: u32,
    count: u64,
    cfg: UpdateConfig,
    stats: &mut UpdateStats,
) {
    let hub = idx.ordering().vertex_at(hub_rank);
    let strict = match label_side {
        LabelSide::In => idx.distance_above(hub, w, hub_rank),
        LabelSide::Out => idx.distance_above(w, hub, hub_rank),
    };
    let entry = LabelEntry {
        hub_rank,
        dist,
        count,
        canonical: strict > dist,
    };
    match idx.upsert(label_side, w, entry) {
        UpsertOutcome::Inserted => {
            stats.labels_inserted += 1;
            if cfg.strategy == UpdateStrategy::Minimality {
                clean_label(idx, label_side, w, stats);
            }
        }
        UpsertOutcome::ReplacedShorter => {
            stats.labels_replaced += 1;
            if cfg.strategy == UpdateStrategy::Minimality {
                clean_label(idx, label_side, w, stats);
            }
        }
        UpsertOutcome::Accumulated => stats.labels_accumulated += 1,
        UpsertOutcome::Ignored => {}
    }
}

/// Removes entries around `w` that a freshly written one made redundant:
/// entries of `w`'s own list whose stored distance now exceeds the index
/// answer, and entries naming `w` as hub in other vertices' opposite-side
/// lists, located through the inverted index.
fn clean_label(idx: &mut LabelIndex, label_side: LabelSide, w: VertexId, stats: &mut UpdateStats) {
    let own: Vec<(Rank, u32)> = match label_side {
        LabelSide::In => idx
            .in_label(w)
            .iter()
            .map(|e| (e.hub_rank, e.dist))
            .collect(),
        LabelSide::Out => idx
            .out_label(w)
            .iter()
            .map(|e| (e.hub_rank, e.dist))
            .collect(),
    };
    for (rank, dist) in own {
        if dist == 0 {
            continue;
        }
        let h = idx.ordering().vertex_at(rank);
        let answered = match label_side {
            LabelSide::In => idx.distance(h, w),
            LabelSide::Out => idx.distance(w, h),
        };
        if dist > answered {
            idx.remove(label_side, w, rank);
            stats.labels_deleted += 1;
        }
    }
    let w_rank = idx.ordering().rank(w);
    let (holders, opposite) = match label_side {
        // A shorter path into w can strand hub-w entries in out-labels.
        LabelSide::In => (idx.inverted_out(w).to_vec(), LabelSide::Out),
        LabelSide::Out => (idx.inverted_in(w).to_vec(), LabelSide::In),
    };
    for v in holders {
        if v == w {
            continue;
        }
        let Some(e) = idx.find(opposite, v, w_rank).copied() else {
            continue;
        };
        let answered = match opposite {
            LabelSide::Out => idx.distance(v, w),
            LabelSide::In => idx.distance(w, v),
        };
        if e.dist > answered {
            idx.remove(opposite, v, w_rank);
            stats.labels_deleted += 1;
        }
    }
}

/// One line of an update workload.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WorkloadOp {
    Insert(String, String),
    Delete(String, String),
}

#[derive(Debug, Error)]
pub enum WorkloadError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Parses a `+`/`-` edge update stream, one `+ u v` or `- u v` per line.
pub fn parse_workload<R: std::io::BufRead>(reader: R) -> Result<Vec<WorkloadOp>, WorkloadError> {
    let mut ops = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut it = trimmed.split_whitespace();
        let (op, u, v) = match (it.next(), it.next(), it.next(), it.next()) {
            (Some(op), Some(u), Some(v), None) => (op, u, v),
            _ => {
                return Err(WorkloadError::Parse {
                    line: lineno + 1,
                    msg: format!("expected '+|- u v', got {trimmed:?}"),
                })
            }
        };
        match op {
            "+" => ops.push(WorkloadOp::Insert(u.to_string(), v.to_string())),
            "-" => ops.push(WorkloadOp::Delete(u.to_string(), v.to_string())),
            other => {
                return Err(WorkloadError::Parse {
                    line: lineno + 1,
                    msg: format!("unknown op {other:?}"),
                })
            }
        }
    }
    Ok(ops)
}
