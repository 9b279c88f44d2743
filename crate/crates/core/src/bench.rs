//! Query benchmark harness: vertices bucketed by min-in-out degree, mean and
//! tail latency per method per bucket, CSV out.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{DirectedGraph, VertexId};
use crate::label::LabelIndex;
use crate::query::{
    shortest_cycle_count, shortest_cycle_count_bfs, shortest_cycle_count_via_neighbors, QueryConfig,
};

/// The degree measure the clusters are built on.
pub fn min_inout_degree(g: &DirectedGraph, v: VertexId) -> usize {
    g.out_degree(v).min(g.in_degree(v))
}

#[derive(Debug, Clone)]
pub struct Cluster {
    pub name: &'static str,
    /// Inclusive degree range of the bucket.
    pub lo: usize,
    pub hi: usize,
    pub vertices: Vec<VertexId>,
}

pub const CLUSTER_NAMES: [&str; 5] = ["high", "mid-high", "mid-low", "low", "bottom"];

/// Splits the degree range `[min, max]` into five even buckets and assigns
/// every vertex by its min-in-out degree. Bucket 0 holds the top range.
pub fn degree_clusters(g: &DirectedGraph) -> Vec<Cluster> {
    let n = g.vertex_count();
    let degs: Vec<usize> = (0..n as VertexId).map(|v| min_inout_degree(g, v)).collect();
    let lo = degs.iter().copied().min().unwrap_or(0);
    let hi = degs.iter().copied().max().unwrap_or(0);
    let span = (hi - lo) as f64;
    let mut clusters: Vec<Cluster> = (0..5)
        .map(|i| {
            // i = 0 is the top bucket.
            let upper = hi as f64 - span * i as f64 / 5.0;
            let lower = hi as f64 - span * (i + 1) as f64 / 5.0;
            Cluster {
                name: CLUSTER_NAMES[i],
                lo: lower.ceil() as usize,
                hi: upper.floor() as usize,
                vertices: Vec::new(),
            }
        })
        .collect();
    for (v, &d) in degs.iter().enumerate() {
        let bucket = if span == 0.0 {
            4
        } else {
            let frac = (hi - d) as f64 / span;
            ((frac * 5.0).floor() as usize).min(4)
        };
        clusters[bucket].vertices.push(v as VertexId);
    }
    clusters
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    CycleIndex,
    PathIndex,
    Bfs,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::CycleIndex => "cycle-index",
            Method::PathIndex => "path-index",
            Method::Bfs => "bfs",
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub cluster: &'static str,
    pub lo: usize,
    pub hi: usize,
    pub method: Method,
    pub queries: usize,
    pub mean_us: f64,
    pub p99_us: f64,
}

pub struct BenchInputs<'a> {
    pub graph: &'a DirectedGraph,
    pub cycle_index: &'a LabelIndex,
    pub path_index: &'a LabelIndex,
    pub cfg: QueryConfig,
}

/// Runs every method over up to `queries_per_cluster` seeded sample vertices
/// of each degree cluster. One untimed warm-up pass per (cluster, method)
/// precedes measurement; per-query latency comes from a monotonic clock.
pub fn run_bench(inputs: &BenchInputs, queries_per_cluster: usize, seed: u64) -> Vec<BenchRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for cluster in degree_clusters(inputs.graph) {
        let mut sample = cluster.vertices.clone();
        sample.shuffle(&mut rng);
        sample.truncate(queries_per_cluster);
        for method in [Method::CycleIndex, Method::PathIndex, Method::Bfs] {
            if sample.is_empty() {
                continue;
            }
            let run_one = |v: VertexId| match method {
                Method::CycleIndex => shortest_cycle_count(inputs.cycle_index, v, inputs.cfg),
                Method::PathIndex => shortest_cycle_count_via_neighbors(
                    inputs.path_index,
                    inputs.graph,
                    v,
                    inputs.cfg,
                ),
                Method::Bfs => shortest_cycle_count_bfs(inputs.graph, v, inputs.cfg),
            };
            for &v in &sample {
                std::hint::black_box(run_one(v));
            }
            let mut lat_us: Vec<f64> = Vec::with_capacity(sample.len());
            for &v in &sample {
                let t0 = Instant::now();
                std::hint::black_box(run_one(v));
                lat_us.push(t0.elapsed().as_secs_f64() * 1e6);
            }
            lat_us.sort_by(|a, b| a.total_cmp(b));
            let mean = lat_us.iter().sum::<f64>() / lat_us.len() as f64;
            let p99_pos = ((lat_us.len() as f64 * 0.99).ceil() as usize).clamp(1, lat_us.len());
            rows.push(BenchRow {
                cluster: cluster.name,
                lo: cluster.lo,
                hi: cluster.hi,
                method,
                queries: sample.len(),
                mean_us: mean,
                p99_us: lat_us[p99_pos - 1],
            });
        }
    }
    rows
}

pub const CSV_HEADER: &str = "cluster,min_degree_lo,min_degree_hi,method,queries,mean_us,p99_us";

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{:.3},{:.3}\n",
            r.cluster,
            r.lo,
            r.hi,
            r.method.name(),
            r.queries,
            r.mean_us,
            r.p99_us
        ));
    }
    out
}
