//! Hub-label storage: per-vertex in/out entry lists plus inverted indexes.

use crate::bipartite::{in_half, out_half};
use crate::graph::VertexId;
use crate::order::{Rank, VertexOrdering};

/// Internal "not reached" distance, outside the on-disk codec range.
pub const UNREACHED: u32 = u32::MAX;

/// One label entry: the hub is identified by its rank under the frozen
/// ordering, which makes rank comparisons and merge intersections direct.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelEntry {
    pub hub_rank: Rank,
    pub dist: u32,
    pub count: u64,
    /// True when `count` covers every shortest path between hub and owner,
    /// false when only the subset on which the hub is the top-ranked vertex.
    pub canonical: bool,
}

/// Which side of the index a list belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelSide {
    In,
    Out,
}

/// Whether the index was built over a plain graph or a split graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexMode {
    Plain,
    Bipartite,
}

/// Query outcome: shortest length and how many shortest paths realize it.
/// `length` is `None` exactly when `count` is 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryResult {
    pub length: Option<u32>,
    pub count: u64,
    /// Count arithmetic saturated at `u64::MAX` somewhere along the way.
    pub saturated: bool,
}

impl QueryResult {
    pub const NONE: QueryResult = QueryResult {
        length: None,
        count: 0,
        saturated: false,
    };

    pub fn found(length: u32, count: u64) -> Self {
        Self {
            length: Some(length),
            count,
            saturated: false,
        }
    }

    pub fn is_none(&self) -> bool {
        self.length.is_none()
    }
}

/// 2-hop label index over one graph with a frozen vertex ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelIndex {
    mode: IndexMode,
    ordering: VertexOrdering,
    l_in: Vec<Vec<LabelEntry>>,
    l_out: Vec<Vec<LabelEntry>>,
    /// `inv_in[h]` lists vertices whose in-label contains hub `h` (by id).
    inv_in: Vec<Vec<VertexId>>,
    /// `inv_out[h]` lists vertices whose out-label contains hub `h` (by id).
    inv_out: Vec<Vec<VertexId>>,
    /// Some count hit the serialization clamp at some point in this index's
    /// history; sticky, so re-saving a lossy file stays byte-identical.
    counts_clamped: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpsertOutcome {
    Inserted,
    ReplacedShorter,
    Accumulated,
    /// Incoming entry was no better than the stored one.
    Ignored,
}

impl LabelIndex {
    pub fn new(mode: IndexMode, ordering: VertexOrdering) -> Self {
        let n = ordering.len();
        Self {
            mode,
            ordering,
            l_in: vec![Vec::new(); n],
            l_out: vec![Vec::new(); n],
            inv_in: vec![Vec::new(); n],
            inv_out: vec![Vec::new(); n],
            counts_clamped: false,
        }
    }

    pub fn mode(&self) -> IndexMode {
        self.mode
    }

    pub fn counts_clamped(&self) -> bool {
        self.counts_clamped
    }

    pub fn mark_counts_clamped(&mut self) {
        self.counts_clamped = true;
    }

    pub fn ordering(&self) -> &VertexOrdering {
        &self.ordering
    }

    /// Number of indexed vertices (halves, for a bipartite index).
    pub fn vertex_count(&self) -> usize {
        self.l_in.len()
    }

    pub fn in_label(&self, v: VertexId) -> &[LabelEntry] {
        &self.l_in[v as usize]
    }

    pub fn out_label(&self, v: VertexId) -> &[LabelEntry] {
        &self.l_out[v as usize]
    }

    fn list(&self, side: LabelSide, v: VertexId) -> &Vec<LabelEntry> {
        match side {
            LabelSide::In => &self.l_in[v as usize],
            LabelSide::Out => &self.l_out[v as usize],
        }
    }

    fn list_mut(&mut self, side: LabelSide, v: VertexId) -> &mut Vec<LabelEntry> {
        match side {
            LabelSide::In => &mut self.l_in[v as usize],
            LabelSide::Out => &mut self.l_out[v as usize],
        }
    }

    fn inverted_mut(&mut self, side: LabelSide, hub: VertexId) -> &mut Vec<VertexId> {
        match side {
            LabelSide::In => &mut self.inv_in[hub as usize],
            LabelSide::Out => &mut self.inv_out[hub as usize],
        }
    }

    /// Vertices whose in-label contains hub `h`.
    pub fn inverted_in(&self, h: VertexId) -> &[VertexId] {
        &self.inv_in[h as usize]
    }

    /// Vertices whose out-label contains hub `h`.
    pub fn inverted_out(&self, h: VertexId) -> &[VertexId] {
        &self.inv_out[h as usize]
    }

    pub fn total_entries(&self) -> usize {
        self.l_in.iter().map(Vec::len).sum::<usize>()
            + self.l_out.iter().map(Vec::len).sum::<usize>()
    }

    /// Appends an entry whose hub ranks above everything already in the list.
    /// This is the bulk build path: hubs are processed from highest rank
    /// down, so lists stay rank-sorted by construction. The inverted indexes
    /// are not touched; bulk writers call
    /// [`rebuild_inverted`](Self::rebuild_inverted) once at the end.
    pub fn push(&mut self, side: LabelSide, v: VertexId, entry: LabelEntry) {
        let list = self.list_mut(side, v);
        debug_assert!(list.last().is_none_or(|e| e.hub_rank < entry.hub_rank));
        list.push(entry);
    }

    pub fn find(&self, side: LabelSide, v: VertexId, hub_rank: Rank) -> Option<&LabelEntry> {
        let list = self.list(side, v);
        list.binary_search_by_key(&hub_rank, |e| e.hub_rank)
            .ok()
            .map(|i| &list[i])
    }

    /// Inserts or merges `entry` into the rank-sorted list, maintaining the
    /// inverted index. A shorter distance replaces, an equal distance
    /// accumulates counts, a longer one is ignored.
    pub fn upsert(&mut self, side: LabelSide, v: VertexId, entry: LabelEntry) -> UpsertOutcome {
        let hub_id = self.ordering.vertex_at(entry.hub_rank);
        let list = self.list_mut(side, v);
        match list.binary_search_by_key(&entry.hub_rank, |e| e.hub_rank) {
            Ok(i) => {
                let stored = &mut list[i];
                if entry.dist < stored.dist {
                    *stored = entry;
                    UpsertOutcome::ReplacedShorter
                } else if entry.dist == stored.dist {
                    stored.count = stored.count.saturating_add(entry.count);
                    stored.canonical = entry.canonical;
                    UpsertOutcome::Accumulated
                } else {
                    UpsertOutcome::Ignored
                }
            }
            Err(i) => {
                list.insert(i, entry);
                let inv = self.inverted_mut(side, hub_id);
                let pos = inv.binary_search(&v).unwrap_err();
                inv.insert(pos, v);
                UpsertOutcome::Inserted
            }
        }
    }

    /// Inserts or overwrites the entry for `entry.hub_rank` unconditionally.
    /// Returns true when the entry is new. Used by rebuild-style passes
    /// whose values are freshly counted rather than incremental.
    pub fn set(&mut self, side: LabelSide, v: VertexId, entry: LabelEntry) -> bool {
        let hub_id = self.ordering.vertex_at(entry.hub_rank);
        let list = self.list_mut(side, v);
        match list.binary_search_by_key(&entry.hub_rank, |e| e.hub_rank) {
            Ok(i) => {
                list[i] = entry;
                false
            }
            Err(i) => {
                list.insert(i, entry);
                let inv = self.inverted_mut(side, hub_id);
                let pos = inv.binary_search(&v).unwrap_err();
                inv.insert(pos, v);
                true
            }
        }
    }

    /// Removes the entry with the given hub, keeping the inverted index
    /// consistent. Returns the removed entry.
    pub fn remove(&mut self, side: LabelSide, v: VertexId, hub_rank: Rank) -> Option<LabelEntry> {
        let hub_id = self.ordering.vertex_at(hub_rank);
        let list = self.list_mut(side, v);
        let i = list.binary_search_by_key(&hub_rank, |e| e.hub_rank).ok()?;
        let entry = list.remove(i);
        let inv = self.inverted_mut(side, hub_id);
        if let Ok(pos) = inv.binary_search(&v) {
            inv.remove(pos);
        }
        Some(entry)
    }

    /// Rebuilds both inverted indexes from the label lists.
    pub fn rebuild_inverted(&mut self) {
        let n = self.vertex_count();
        self.inv_in = vec![Vec::new(); n];
        self.inv_out = vec![Vec::new(); n];
        for v in 0..n as VertexId {
            for i in 0..self.l_in[v as usize].len() {
                let hub = self.ordering.vertex_at(self.l_in[v as usize][i].hub_rank);
                self.inv_in[hub as usize].push(v);
            }
            for i in 0..self.l_out[v as usize].len() {
                let hub = self.ordering.vertex_at(self.l_out[v as usize][i].hub_rank);
                self.inv_out[hub as usize].push(v);
            }
        }
        for list in self.inv_in.iter_mut().chain(self.inv_out.iter_mut()) {
            list.sort_unstable();
        }
    }

    /// Full evaluation over `L_out(s)` and `L_in(t)`: minimum combined
    /// distance over common hubs, counts multiplied per hub and summed over
    /// the minimizing ones.
    pub fn eval(&self, s: VertexId, t: VertexId) -> QueryResult {
        self.eval_min_dist(s, t, 0)
    }

    /// Like [`eval`](Self::eval) but ignores hubs whose combined distance is
    /// below `min_dist`.
    pub fn eval_min_dist(&self, s: VertexId, t: VertexId, min_dist: u32) -> QueryResult {
        let mut best = UNREACHED;
        let mut count: u64 = 0;
        let mut saturated = false;
        merge_common_hubs(self.out_label(s), self.in_label(t), |so, si| {
            let d = so.dist + si.dist;
            if d < min_dist || d > best {
                return;
            }
            let (c, sat) = mul_counts(so.count, si.count);
            if d < best {
                best = d;
                count = c;
                saturated = sat;
            } else {
                let (sum, sat2) = add_counts(count, c);
                count = sum;
                saturated = saturated || sat || sat2;
            }
        });
        if best == UNREACHED {
            QueryResult::NONE
        } else {
            QueryResult {
                length: Some(best),
                count,
                saturated,
            }
        }
    }

    /// Shortest distance via common hubs, or [`UNREACHED`].
    pub fn distance(&self, s: VertexId, t: VertexId) -> u32 {
        let mut best = UNREACHED;
        merge_common_hubs(self.out_label(s), self.in_label(t), |so, si| {
            best = best.min(so.dist + si.dist);
        });
        best
    }

    /// Shortest distance using only canonical entries whose hub ranks
    /// strictly above `rank_bound`. This is the pruning query of index
    /// construction: the partially built index contains exactly those hubs,
    /// with flags that are exact by construction.
    pub fn canonical_distance_above(&self, s: VertexId, t: VertexId, rank_bound: Rank) -> u32 {
        let mut best = UNREACHED;
        merge_common_hubs(self.out_label(s), self.in_label(t), |so, si| {
            if so.hub_rank >= rank_bound {
                return;
            }
            if so.canonical && si.canonical {
                best = best.min(so.dist + si.dist);
            }
        });
        best
    }

    /// Shortest distance over all entries whose hub ranks strictly above
    /// `rank_bound`. Same value as the canonical variant whenever flags are
    /// exact, but immune to flag staleness: updates can silently turn a
    /// non-canonical survivor canonical (its higher-ranked rivals vanished
    /// with a deleted edge), and whether an entry witnesses a distance never
    /// depends on its flag. The update passes therefore use this form.
    pub fn distance_above(&self, s: VertexId, t: VertexId, rank_bound: Rank) -> u32 {
        let mut best = UNREACHED;
        merge_common_hubs(self.out_label(s), self.in_label(t), |so, si| {
            if so.hub_rank < rank_bound {
                best = best.min(so.dist + si.dist);
            }
        });
        best
    }

    /// Split-graph endpoints of the cycle query for original vertex `v`.
    pub fn cycle_endpoints(&self, v: VertexId) -> (VertexId, VertexId) {
        debug_assert_eq!(self.mode, IndexMode::Bipartite);
        (out_half(v), in_half(v))
    }

    /// Checks the structural invariants; used by tests.
    pub fn check_consistency(&self) -> Result<(), String> {
        for v in 0..self.vertex_count() as VertexId {
            for (side, list) in [
                (LabelSide::In, self.in_label(v)),
                (LabelSide::Out, self.out_label(v)),
            ] {
                let own_rank = self.ordering.rank(v);
                let mut prev: Option<Rank> = None;
                for e in list {
                    if e.count == 0 {
                        return Err(format!("zero count at v={v} {side:?}"));
                    }
                    if e.hub_rank > own_rank {
                        return Err(format!("hub below owner at v={v} {side:?}"));
                    }
                    if prev.is_some_and(|p| p >= e.hub_rank) {
                        return Err(format!("list not rank-sorted at v={v} {side:?}"));
                    }
                    prev = Some(e.hub_rank);
                    let hub = self.ordering.vertex_at(e.hub_rank);
                    let inv = match side {
                        LabelSide::In => self.inverted_in(hub),
                        LabelSide::Out => self.inverted_out(hub),
                    };
                    if inv.binary_search(&v).is_err() {
                        return Err(format!("inverted index misses v={v} hub={hub} {side:?}"));
                    }
                }
            }
        }
        let inv_total: usize = self.inv_in.iter().map(Vec::len).sum::<usize>()
            + self.inv_out.iter().map(Vec::len).sum::<usize>();
        if inv_total != self.total_entries() {
            return Err("inverted index size mismatch".into());
        }
        Ok(())
    }
}

/// Walks two rank-sorted lists and invokes `f` on every common hub.
pub fn merge_common_hubs(
    out_list: &[LabelEntry],
    in_list: &[LabelEntry],
    mut f: impl FnMut(&LabelEntry, &LabelEntry),
) {
    let (mut i, mut j) = (0, 0);
    while i < out_list.len() && j < in_list.len() {
        let (a, b) = (&out_list[i], &in_list[j]);
        match a.hub_rank.cmp(&b.hub_rank) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                f(a, b);
                i += 1;
                j += 1;
            }
        }
    }
}

pub fn mul_counts(a: u64, b: u64) -> (u64, bool) {
    match a.checked_mul(b) {
        Some(c) => (c, false),
        None => (u64::MAX, true),
    }
}

pub fn add_counts(a: u64, b: u64) -> (u64, bool) {
    match a.checked_add(b) {
        Some(c) => (c, false),
        None => (u64::MAX, true),
    }
}
