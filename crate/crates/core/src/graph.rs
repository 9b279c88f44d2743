//! Mutable directed graph with sorted adjacency lists.

use std::collections::HashMap;
use std::io::BufRead;

use thiserror::Error;

/// Dense vertex identifier in `[0, n)`.
pub type VertexId = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop ({0}, {0}) rejected")]
    SelfLoop(VertexId),
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(VertexId, usize),
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Simple directed graph: no self-loops, no parallel edges.
///
/// Both directions of adjacency are kept, sorted by neighbor id, so edge
/// presence checks are `O(log deg)` and serialization is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    out_adj: Vec<Vec<VertexId>>,
    in_adj: Vec<Vec<VertexId>>,
    m: usize,
}

impl DirectedGraph {
    pub fn new(n: usize) -> Self {
        Self {
            out_adj: vec![Vec::new(); n],
            in_adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list, dropping self-loops and duplicates.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Self {
        let mut g = Self::new(n);
        for &(a, b) in edges {
            if a != b {
                let _ = g.insert_edge(a, b);
            }
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.out_adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out_adj[v as usize]
    }

    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.in_adj[v as usize]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_adj[v as usize].len()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_adj[v as usize].len()
    }

    /// Total degree, in-degree plus out-degree.
    pub fn degree(&self, v: VertexId) -> usize {
        self.out_degree(v) + self.in_degree(v)
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.out_adj[a as usize].binary_search(&b).is_ok()
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if (v as usize) < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange(v, self.vertex_count()))
        }
    }

    /// Inserts edge `(a, b)`. Returns `Ok(false)` if it was already present.
    pub fn insert_edge(&mut self, a: VertexId, b: VertexId) -> Result<bool, GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        let out = &mut self.out_adj[a as usize];
        match out.binary_search(&b) {
            Ok(_) => Ok(false),
            Err(pos) => {
                out.insert(pos, b);
                let inn = &mut self.in_adj[b as usize];
                let pos = inn.binary_search(&a).unwrap_err();
                inn.insert(pos, a);
                self.m += 1;
                Ok(true)
            }
        }
    }

    /// Deletes edge `(a, b)`. Returns `Ok(false)` if it was absent.
    pub fn delete_edge(&mut self, a: VertexId, b: VertexId) -> Result<bool, GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        let out = &mut self.out_adj[a as usize];
        match out.binary_search(&b) {
            Err(_) => Ok(false),
            Ok(pos) => {
                out.remove(pos);
                let inn = &mut self.in_adj[b as usize];
                let pos = inn.binary_search(&a).unwrap();
                inn.remove(pos);
                self.m -= 1;
                Ok(true)
            }
        }
    }

    /// Graph with every edge direction flipped.
    pub fn reversed(&self) -> DirectedGraph {
        DirectedGraph {
            out_adj: self.in_adj.clone(),
            in_adj: self.out_adj.clone(),
            m: self.m,
        }
    }

    /// All edges in `(source, neighbor)` order, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(a, nbrs)| nbrs.iter().map(move |&b| (a as VertexId, b)))
    }
}

/// Maps external vertex names to dense ids, in first-appearance order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdDictionary {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
}

impl IdDictionary {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn intern(&mut self, name: &str) -> VertexId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = self.names.len() as VertexId;
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        id
    }

    /// Dense id for an external name, if it was seen at load time.
    pub fn resolve(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    /// External name for a dense id.
    pub fn name(&self, id: VertexId) -> &str {
        &self.names[id as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn from_names(names: Vec<String>) -> Self {
        let index = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as VertexId))
            .collect();
        Self { names, index }
    }
}

/// Result of parsing an edge-list stream.
#[derive(Debug)]
pub struct LoadedGraph {
    pub graph: DirectedGraph,
    pub dict: IdDictionary,
    pub dropped_self_loops: usize,
    pub dropped_duplicates: usize,
}

/// Parses a whitespace-separated `u v` edge list.
///
/// Lines starting with `#` are comments and blank lines are skipped.
/// Self-loops and duplicate edges are dropped and counted in the summary;
/// anything else malformed is an error carrying the 1-based line number.
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<LoadedGraph, LoadError> {
    let mut dict = IdDictionary::default();
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut dropped_self_loops = 0usize;

    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let (u, v) = match (it.next(), it.next(), it.next()) {
            (Some(u), Some(v), None) => (u, v),
            _ => {
                return Err(LoadError::Parse {
                    line: lineno + 1,
                    msg: format!("expected two vertex tokens, got {:?}", line),
                })
            }
        };
        let u = dict.intern(u);
        let v = dict.intern(v);
        if u == v {
            dropped_self_loops += 1;
            continue;
        }
        edges.push((u, v));
    }

    let mut graph = DirectedGraph::new(dict.len());
    let mut dropped_duplicates = 0usize;
    for (u, v) in edges {
        match graph.insert_edge(u, v) {
            Ok(true) => {}
            Ok(false) => dropped_duplicates += 1,
            Err(e) => unreachable!("pre-filtered edge rejected: {e}"),
        }
    }

    Ok(LoadedGraph {
        graph,
        dict,
        dropped_self_loops,
        dropped_duplicates,
    })
}
