//! Randomized stress tests for the dynamic maintenance paths.

use shortcycle::bipartite::{bipartite_convert, BipartiteGraph};
use shortcycle::builder::{build_cycle_index, build_path_index};
use shortcycle::dynamic::{apply_deletion, apply_insertion, UpdateConfig, UpdateStrategy};
use shortcycle::gen;
use shortcycle::graph::{DirectedGraph, VertexId};
use shortcycle::label::{LabelIndex, LabelSide};
use shortcycle::oracle::{oracle_apsp, oracle_sccnt_from_apsp};
use shortcycle::order::{
    compute_bipartite_ordering, compute_ordering, OrderingStrategy, VertexOrdering,
};
use shortcycle::query::{shortest_cycle_count, shortest_path_count, QueryConfig};

use rand::prelude::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn entry_triples(idx: &LabelIndex, side: LabelSide, v: VertexId) -> Vec<(u32, u32, u64)> {
    let list = match side {
        LabelSide::In => idx.in_label(v),
        LabelSide::Out => idx.out_label(v),
    };
    list.iter().map(|e| (e.hub_rank, e.dist, e.count)).collect()
}

/// Entry content equality modulo canonical flags, which may drift toward
/// over-marking under updates without affecting any answer.
fn same_label_multisets(a: &LabelIndex, b: &LabelIndex) -> Result<(), String> {
    assert_eq!(a.vertex_count(), b.vertex_count());
    for v in 0..a.vertex_count() as VertexId {
        for side in [LabelSide::In, LabelSide::Out] {
            let ta = entry_triples(a, side, v);
            let tb = entry_triples(b, side, v);
            if ta != tb {
                return Err(format!(
                    "v={v} {side:?}:\n  updated: {ta:?}\n  rebuilt: {tb:?}"
                ));
            }
        }
    }
    Ok(())
}

fn check_cycle_answers(idx: &LabelIndex, g: &DirectedGraph, ctx: &str) {
    let apsp = oracle_apsp(g);
    for v in 0..g.vertex_count() as VertexId {
        let got = shortest_cycle_count(idx, v, QueryConfig::unfiltered());
        let want = oracle_sccnt_from_apsp(g, &apsp, v, 2);
        assert_eq!(got, want, "{ctx}: vertex {v}");
    }
}

/// Every ordered half-pair query must match a fresh rebuild, including the
/// pairs the labeling scheme does not fully cover: both sides compute the
/// same partial answers, so they must agree exactly.
fn check_rebuild_query_equivalence(
    idx: &LabelIndex,
    gb: &BipartiteGraph,
    ord: &VertexOrdering,
    ctx: &str,
) {
    let fresh = build_cycle_index(gb, ord);
    let n = gb.base().vertex_count() as VertexId;
    for s in 0..n {
        for t in 0..n {
            assert_eq!(
                shortest_path_count(idx, s, t),
                shortest_path_count(&fresh, s, t),
                "{ctx}: pair ({s}, {t})"
            );
        }
    }
}

#[test]
fn random_update_sequences_match_rebuilds() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..40 {
        let n = rng.random_range(4..=48);
        let m = (n as f64 * [1.5, 3.0, 6.0][case % 3]) as usize;
        let mut g = gen::erdos(n, m, 1000 + case as u64);
        let mut gb = bipartite_convert(&g);
        let ord = compute_bipartite_ordering(&gb, OrderingStrategy::DegreeSum);
        let mut idx_red = build_cycle_index(&gb, &ord);
        let mut idx_min = idx_red.clone();
        let red = UpdateConfig {
            strategy: UpdateStrategy::Redundancy,
        };
        let min = UpdateConfig {
            strategy: UpdateStrategy::Minimality,
        };

        for step in 0..24 {
            // Random insert or delete, biased to keep some edges around.
            let insert = g.edge_count() < 4 || rng.random_bool(0.55);
            if insert {
                let a = rng.random_range(0..n) as VertexId;
                let b = rng.random_range(0..n) as VertexId;
                if a == b || g.has_edge(a, b) {
                    continue;
                }
                g.insert_edge(a, b).unwrap();
                gb.insert_original_edge(a, b).unwrap();
                let (ba, bb) = gb.map_edge(a, b);
                apply_insertion(&mut idx_red, gb.base(), ba, bb, red);
                apply_insertion(&mut idx_min, gb.base(), ba, bb, min);
            } else {
                let edges: Vec<_> = g.edges().collect();
                let &(a, b) = edges.choose(&mut rng).unwrap();
                g.delete_edge(a, b).unwrap();
                gb.delete_original_edge(a, b).unwrap();
                let (ba, bb) = gb.map_edge(a, b);
                apply_deletion(&mut idx_red, gb.base(), ba, bb, red);
                apply_deletion(&mut idx_min, gb.base(), ba, bb, min);
            }
            let ctx = format!("case {case} step {step} (insert={insert})");
            idx_red
                .check_consistency()
                .unwrap_or_else(|e| panic!("{ctx}: {e}"));
            idx_min
                .check_consistency()
                .unwrap_or_else(|e| panic!("{ctx}: {e}"));
            check_cycle_answers(&idx_red, &g, &format!("{ctx} redundancy"));
            check_cycle_answers(&idx_min, &g, &format!("{ctx} minimality"));
            let fresh = build_cycle_index(&gb, &ord);
            same_label_multisets(&idx_min, &fresh)
                .unwrap_or_else(|e| panic!("{ctx} minimality multiset: {e}"));
            if step % 6 == 5 {
                check_rebuild_query_equivalence(&idx_red, &gb, &ord, &ctx);
            }
        }
        check_rebuild_query_equivalence(&idx_red, &gb, &ord, &format!("case {case} final"));
        check_redundancy_dominance(&idx_red, &gb, &format!("case {case} final"));

        // Under redundancy the label set is a superset of the minimal one.
        for v in 0..gb.base().vertex_count() as VertexId {
            for side in [LabelSide::In, LabelSide::Out] {
                let red = entry_triples(&idx_red, side, v);
                for needed in entry_triples(&idx_min, side, v) {
                    assert!(
                        red.iter().any(|e| e.0 == needed.0),
                        "case {case}: redundancy lost hub {} at v={v} {side:?}",
                        needed.0
                    );
                }
            }
        }
    }
}

/// Every extra entry the redundancy strategy leaves behind must be strictly
/// distance-dominated: stored distance above the true one, never selected.
fn check_redundancy_dominance(idx: &LabelIndex, gb: &BipartiteGraph, ctx: &str) {
    let apsp = oracle_apsp(gb.base());
    for v in 0..gb.base().vertex_count() as VertexId {
        for e in idx.in_label(v) {
            let h = idx.ordering().vertex_at(e.hub_rank);
            assert!(
                e.dist >= apsp.dist(h, v),
                "{ctx}: entry below true distance"
            );
        }
        for e in idx.out_label(v) {
            let h = idx.ordering().vertex_at(e.hub_rank);
            assert!(
                e.dist >= apsp.dist(v, h),
                "{ctx}: entry below true distance"
            );
        }
    }
}

#[test]
fn plain_index_updates_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xface);
    for case in 0..12 {
        let n = rng.random_range(4..=24);
        let mut g = gen::erdos(n, 3 * n, 2000 + case);
        let ord = compute_ordering(&g, OrderingStrategy::DegreeSum);
        let mut idx = build_path_index(&g, &ord);
        let cfg = UpdateConfig {
            strategy: UpdateStrategy::Minimality,
        };
        for _ in 0..16 {
            let insert = g.edge_count() < 4 || rng.random_bool(0.5);
            if insert {
                let a = rng.random_range(0..n) as VertexId;
                let b = rng.random_range(0..n) as VertexId;
                if a == b || g.has_edge(a, b) {
                    continue;
                }
                g.insert_edge(a, b).unwrap();
                apply_insertion(&mut idx, &g, a, b, cfg);
            } else {
                let edges: Vec<_> = g.edges().collect();
                let &(a, b) = edges.choose(&mut rng).unwrap();
                g.delete_edge(a, b).unwrap();
                apply_deletion(&mut idx, &g, a, b, cfg);
            }
            idx.check_consistency().unwrap();
            let apsp = oracle_apsp(&g);
            for s in 0..n as VertexId {
                for t in 0..n as VertexId {
                    assert_eq!(
                        shortest_path_count(&idx, s, t),
                        apsp.pair(s, t),
                        "case {case}: pair ({s}, {t})"
                    );
                }
            }
            let fresh = build_path_index(&g, &ord);
            same_label_multisets(&idx, &fresh).unwrap();
        }
    }
}

/// Long soak over bigger, denser graphs with per-step verification of
/// everything the fast sweep checks plus full-pair equivalence. Run it with
/// `cargo test -p shortcycle --test maintenance -- --ignored`.
#[test]
#[ignore = "multi-minute soak; the default sweep covers the same invariants"]
fn soak_random_update_sequences() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x50a4);
    for case in 0..250 {
        let n = rng.random_range(4..=64);
        let m = (n as f64 * [1.5, 3.0, 6.0][case % 3]) as usize;
        let mut g = gen::erdos(n, m, 700_000 + case as u64);
        let mut gb = bipartite_convert(&g);
        let ord = compute_bipartite_ordering(&gb, OrderingStrategy::DegreeSum);
        let mut idx_red = build_cycle_index(&gb, &ord);
        let mut idx_min = idx_red.clone();
        let red = UpdateConfig {
            strategy: UpdateStrategy::Redundancy,
        };
        let min = UpdateConfig {
            strategy: UpdateStrategy::Minimality,
        };
        for step in 0..40 {
            let insert = g.edge_count() < 4 || rng.random_bool(0.5);
            if insert {
                let a = rng.random_range(0..n) as VertexId;
                let b = rng.random_range(0..n) as VertexId;
                if a == b || g.has_edge(a, b) {
                    continue;
                }
                g.insert_edge(a, b).unwrap();
                gb.insert_original_edge(a, b).unwrap();
                let (ba, bb) = gb.map_edge(a, b);
                apply_insertion(&mut idx_red, gb.base(), ba, bb, red);
                apply_insertion(&mut idx_min, gb.base(), ba, bb, min);
            } else {
                let edges: Vec<_> = g.edges().collect();
                let &(a, b) = edges.choose(&mut rng).unwrap();
                g.delete_edge(a, b).unwrap();
                gb.delete_original_edge(a, b).unwrap();
                let (ba, bb) = gb.map_edge(a, b);
                apply_deletion(&mut idx_red, gb.base(), ba, bb, red);
                apply_deletion(&mut idx_min, gb.base(), ba, bb, min);
            }
            let ctx = format!("soak case {case} step {step} (insert={insert})");
            idx_red
                .check_consistency()
                .unwrap_or_else(|e| panic!("{ctx}: {e}"));
            idx_min
                .check_consistency()
                .unwrap_or_else(|e| panic!("{ctx}: {e}"));
            check_cycle_answers(&idx_red, &g, &format!("{ctx} redundancy"));
            check_cycle_answers(&idx_min, &g, &format!("{ctx} minimality"));
            let fresh = build_cycle_index(&gb, &ord);
            same_label_multisets(&idx_min, &fresh)
                .unwrap_or_else(|e| panic!("{ctx} minimality multiset: {e}"));
            check_rebuild_query_equivalence(&idx_red, &gb, &ord, &ctx);
            check_rebuild_query_equivalence(&idx_min, &gb, &ord, &ctx);
        }
        check_redundancy_dominance(&idx_red, &gb, &format!("soak case {case}"));
    }
}

#[test]
fn ascending_restore_order_breaks_some_deletion() {
    // The deletion restore passes prune against canonical entries of
    // strictly higher-ranked hubs, so running them bottom-up must be able to
    // corrupt the result: a lower hub then judges coverage against entries
    // that a higher hub has not regenerated yet.
    let mut rng = ChaCha8Rng::seed_from_u64(0x0bad);
    let mut diverged = false;
    'search: for case in 0..400 {
        let n = rng.random_range(4..=20);
        let m = (n as f64 * 2.5) as usize;
        let mut g = gen::erdos(n, m, 9000 + case);
        let mut gb = bipartite_convert(&g);
        let ord = compute_bipartite_ordering(&gb, OrderingStrategy::DegreeSum);
        let mut idx = build_cycle_index(&gb, &ord);
        let cfg = UpdateConfig {
            strategy: UpdateStrategy::Minimality,
        };
        for _ in 0..8 {
            let edges: Vec<_> = g.edges().collect();
            if edges.is_empty() {
                break;
            }
            let &(a, b) = edges.choose(&mut rng).unwrap();
            g.delete_edge(a, b).unwrap();
            gb.delete_original_edge(a, b).unwrap();
            let (ba, bb) = gb.map_edge(a, b);
            shortcycle::dynamic::apply_deletion_ascending(&mut idx, gb.base(), ba, bb, cfg);
            let apsp = oracle_apsp(&g);
            let fresh = build_cycle_index(&gb, &ord);
            let wrong_answer = (0..n as VertexId).any(|v| {
                shortest_cycle_count(&idx, v, QueryConfig::unfiltered())
                    != oracle_sccnt_from_apsp(&g, &apsp, v, 2)
            });
            if wrong_answer || same_label_multisets(&idx, &fresh).is_err() {
                diverged = true;
                break 'search;
            }
        }
    }
    assert!(
        diverged,
        "bottom-up restores never diverged; the descending-order \
         requirement would be untestable"
    );
}

#[test]
fn insertion_is_robust_to_hub_order() {
    // Insertion seeds come from L_in(a) / L_out(b), which the update itself
    // never changes, and the rank gates partition path ownership on their
    // own, so hub order affects only how much gets pruned, not the answers.
    // Pinned as a regression: if seeding or gating changes, this surfaces.
    let mut rng = ChaCha8Rng::seed_from_u64(0x90de);
    for case in 0..60 {
        let n = rng.random_range(4..=20);
        let mut g = gen::erdos(n, (n as f64 * 2.5) as usize, 4000 + case);
        let mut gb = bipartite_convert(&g);
        let ord = compute_bipartite_ordering(&gb, OrderingStrategy::DegreeSum);
        let mut idx = build_cycle_index(&gb, &ord);
        let cfg = UpdateConfig {
            strategy: UpdateStrategy::Redundancy,
        };
        for _ in 0..8 {
            let a = rng.random_range(0..n) as VertexId;
            let b = rng.random_range(0..n) as VertexId;
            if a == b || g.has_edge(a, b) {
                continue;
            }
            g.insert_edge(a, b).unwrap();
            gb.insert_original_edge(a, b).unwrap();
            let (ba, bb) = gb.map_edge(a, b);
            shortcycle::dynamic::apply_insertion_ascending(&mut idx, gb.base(), ba, bb, cfg);
            let apsp = oracle_apsp(&g);
            for v in 0..n as VertexId {
                assert_eq!(
                    shortest_cycle_count(&idx, v, QueryConfig::unfiltered()),
                    oracle_sccnt_from_apsp(&g, &apsp, v, 2),
                    "case {case} vertex {v}"
                );
            }
        }
    }
}

#[test]
fn deleting_an_edge_with_equal_parallel_route_restores_cleanly() {
    // Two equal-length routes between the ends; deleting one arm only
    // re-weights counts, distances stay. The minimal deletion footprint is
    // the pair entry of the arm itself plus whatever counted through it.
    let mut g = DirectedGraph::from_edges(5, &[(0, 1), (1, 4), (0, 2), (2, 4), (4, 3), (3, 0)]);
    let mut gb = bipartite_convert(&g);
    let ord = compute_bipartite_ordering(&gb, OrderingStrategy::DegreeSum);
    let mut idx = build_cycle_index(&gb, &ord);
    g.delete_edge(0, 1).unwrap();
    gb.delete_original_edge(0, 1).unwrap();
    let (a, b) = gb.map_edge(0, 1);
    let stats = apply_deletion(&mut idx, gb.base(), a, b, UpdateConfig::default());
    assert!(
        stats.labels_deleted > 0,
        "stale count-bearing entries exist"
    );
    check_cycle_answers(&idx, &g, "parallel-route deletion");
    same_label_multisets(&idx, &build_cycle_index(&gb, &ord)).unwrap();
}
