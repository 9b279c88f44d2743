//! Index construction by pruned breadth-first hub pushing.
//!
//! Hubs are processed from highest rank to lowest. Each hub runs a forward
//! BFS that writes in-label entries at the vertices it covers and a backward
//! BFS that writes out-label entries. A visit of `w` at tentative distance
//! `D` with tentative count `C` is resolved against the partial index built
//! so far: let `q` be the shortest distance through a strictly higher-ranked
//! canonical hub pair. `q < D` prunes the subtree, `q == D` stores a
//! non-canonical entry (only some shortest paths have this hub on top) and
//! `q > D` a canonical one. Counts accumulate across equal-distance arrivals
//! before a vertex is dequeued, so `C` is final by the time it is stored.
//!
//! The cycle build runs on the split graph and jumps half-pairs: the
//! outgoing half of a visited incoming half inherits distance `D + 1` and the
//! same count (its only in-edge is the pair edge), and outgoing halves never
//! act as hubs beyond their own self-entries. On any `out_half -> in_half`
//! path every outgoing half except possibly the start is preceded by its own
//! incoming half, so the top-ranked vertex of a cycle path is always an
//! incoming half and the restriction loses nothing for cycle queries.

use std::collections::VecDeque;

use crate::bipartite::{other_half, side, BipartiteGraph, Side};
use crate::graph::{DirectedGraph, VertexId};
use crate::label::{IndexMode, LabelEntry, LabelIndex, LabelSide, UNREACHED};
use crate::order::{Rank, VertexOrdering};

/// Which vertices are eligible to push labels as hubs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum HubPolicy {
    /// Every vertex runs its two BFS passes.
    All,
    /// Only incoming halves run passes; outgoing halves self-label.
    IncomingHalvesOnly,
}

/// Builds the path-counting index over a plain directed graph.
pub fn build_path_index(g: &DirectedGraph, ord: &VertexOrdering) -> LabelIndex {
    assert_eq!(ord.len(), g.vertex_count());
    let mut b = Builder::new(g, ord, IndexMode::Plain);
    b.run(HubPolicy::All, false);
    b.idx
}

/// Builds the cycle-counting index over a split graph, jumping half-pairs.
pub fn build_cycle_index(gb: &BipartiteGraph, ord: &VertexOrdering) -> LabelIndex {
    assert_eq!(ord.len(), gb.base().vertex_count());
    let mut b = Builder::new(gb.base(), ord, IndexMode::Bipartite);
    b.run(HubPolicy::IncomingHalvesOnly, true);
    b.idx
}

/// Reference build without the half-pair jump: identical hub policy, but the
/// BFS walks the split graph vertex by vertex. Exists to check that the jump
/// is a pure traversal shortcut.
pub fn build_cycle_index_reference(gb: &BipartiteGraph, ord: &VertexOrdering) -> LabelIndex {
    assert_eq!(ord.len(), gb.base().vertex_count());
    let mut b = Builder::new(gb.base(), ord, IndexMode::Bipartite);
    b.run(HubPolicy::IncomingHalvesOnly, false);
    b.idx
}

struct Builder<'g> {
    g: &'g DirectedGraph,
    ord: &'g VertexOrdering,
    idx: LabelIndex,
    dist: Vec<u32>,
    cnt: Vec<u64>,
    touched: Vec<VertexId>,
    queue: VecDeque<VertexId>,
}

impl<'g> Builder<'g> {
    fn new(g: &'g DirectedGraph, ord: &'g VertexOrdering, mode: IndexMode) -> Self {
        let n = g.vertex_count();
        Self {
            g,
            ord,
            idx: LabelIndex::new(mode, ord.clone()),
            dist: vec![UNREACHED; n],
            cnt: vec![0; n],
            touched: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    fn run(&mut self, policy: HubPolicy, jump_pairs: bool) {
        for hub in self.ord.by_rank().collect::<Vec<_>>() {
            if policy == HubPolicy::IncomingHalvesOnly && side(hub) == Side::Outgoing {
                let r = self.ord.rank(hub);
                let own = LabelEntry {
                    hub_rank: r,
                    dist: 0,
                    count: 1,
                    canonical: true,
                };
                self.idx.push(LabelSide::In, hub, own);
                self.idx.push(LabelSide::Out, hub, own);
                continue;
            }
            if jump_pairs {
                self.in_pass_jumping(hub);
                self.out_pass_jumping(hub);
            } else {
                self.pass_plain(hub, LabelSide::In);
                self.pass_plain(hub, LabelSide::Out);
            }
        }
        self.idx.rebuild_inverted();
        debug_assert_eq!(self.idx.check_consistency(), Ok(()));
    }

    fn seed(&mut self, hub: VertexId) {
        self.dist[hub as usize] = 0;
        self.cnt[hub as usize] = 1;
        self.touched.push(hub);
        self.queue.push_back(hub);
    }

    fn reset(&mut self) {
        for v in self.touched.drain(..) {
            self.dist[v as usize] = UNREACHED;
            self.cnt[v as usize] = 0;
        }
        self.queue.clear();
    }

    /// Pruning query against the partial index: shortest distance through a
    /// canonical hub pair ranked strictly above the current hub.
    fn pruning_distance(&self, side: LabelSide, hub: VertexId, w: VertexId, bound: Rank) -> u32 {
        match side {
            LabelSide::In => self.idx.canonical_distance_above(hub, w, bound),
            LabelSide::Out => self.idx.canonical_distance_above(w, hub, bound),
        }
    }

    fn expand(&mut self, from: VertexId, hub_rank: Rank, label_side: LabelSide) {
        let d = self.dist[from as usize];
        let c = self.cnt[from as usize];
        let nbrs = match label_side {
            LabelSide::In => self.g.out_neighbors(from),
            LabelSide::Out => self.g.in_neighbors(from),
        };
        for &u in nbrs {
            if self.ord.rank(u) <= hub_rank {
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

    /// One hub pass without pair jumping; `label_side` selects direction.
    fn pass_plain(&mut self, hub: VertexId, label_side: LabelSide) {
        let hub_rank = self.ord.rank(hub);
        self.seed(hub);
        while let Some(w) = self.queue.pop_front() {
            let d = self.dist[w as usize];
            let q = self.pruning_distance(label_side, hub, w, hub_rank);
            if q < d {
                continue;
            }
            self.idx.push(
                label_side,
                w,
                LabelEntry {
                    hub_rank,
                    dist: d,
                    count: self.cnt[w as usize],
                    canonical: q > d,
                },
            );
            self.expand(w, hub_rank, label_side);
        }
        self.reset();
    }

    /// Forward pass over the split graph. Only incoming halves enter the
    /// queue; the outgoing half of each visited vertex is labeled in the same
    /// step at distance `D + 1` and expansion continues from it.
    fn in_pass_jumping(&mut self, hub: VertexId) {
        debug_assert_eq!(side(hub), Side::Incoming);
        let hub_rank = self.ord.rank(hub);
        self.seed(hub);
        while let Some(w) = self.queue.pop_front() {
            debug_assert_eq!(side(w), Side::Incoming);
            let d = self.dist[w as usize];
            let c = self.cnt[w as usize];
            let q = self.pruning_distance(LabelSide::In, hub, w, hub_rank);
            if q < d {
                continue;
            }
            let canonical = q > d;
            self.idx.push(
                LabelSide::In,
                w,
                LabelEntry {
                    hub_rank,
                    dist: d,
                    count: c,
                    canonical,
                },
            );
            let pair = other_half(w);
            self.idx.push(
                LabelSide::In,
                pair,
                LabelEntry {
                    hub_rank,
                    dist: d + 1,
                    count: c,
                    canonical,
                },
            );
            self.dist[pair as usize] = d + 1;
            self.cnt[pair as usize] = c;
            self.touched.push(pair);
            self.expand(pair, hub_rank, LabelSide::In);
        }
        self.reset();
    }

    /// Backward pass over the split graph. After the hub itself, every
    /// dequeued vertex is an outgoing half; its incoming half is labeled at
    /// `D + 1` and expansion continues from there. Reaching the hub's own
    /// outgoing half stores the entry (a cycle back to the hub) and stops,
    /// since the only vertex behind it is the hub itself.
    fn out_pass_jumping(&mut self, hub: VertexId) {
        debug_assert_eq!(side(hub), Side::Incoming);
        let hub_rank = self.ord.rank(hub);
        self.seed(hub);
        while let Some(w) = self.queue.pop_front() {
            let d = self.dist[w as usize];
            let c = self.cnt[w as usize];
            if w == hub {
                self.idx.push(
                    LabelSide::Out,
                    hub,
                    LabelEntry {
                        hub_rank,
                        dist: 0,
                        count: 1,
                        canonical: true,
                    },
                );
                self.expand(hub, hub_rank, LabelSide::Out);
                continue;
            }
            debug_assert_eq!(side(w), Side::Outgoing);
            let q = self.pruning_distance(LabelSide::Out, hub, w, hub_rank);
            if q < d {
                continue;
            }
            let canonical = q > d;
            self.idx.push(
                LabelSide::Out,
                w,
                LabelEntry {
                    hub_rank,
                    dist: d,
                    count: c,
                    canonical,
                },
            );
            if w == other_half(hub) {
                continue;
            }
            let pair = other_half(w);
            self.idx.push(
                LabelSide::Out,
                pair,
                LabelEntry {
                    hub_rank,
                    dist: d + 1,
                    count: c,
                    canonical,
                },
            );
            self.dist[pair as usize] = d + 1;
            self.cnt[pair as usize] = c;
            self.touched.push(pair);
            self.expand(pair, hub_rank, LabelSide::Out);
        }
        self.reset();
    }
}
