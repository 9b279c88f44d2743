//! Binary persistence for graphs and indexes.
//!
//! Both formats are deterministic: saving, loading, and saving again yields
//! byte-identical files. All integers are little-endian.
//!
//! # Graph snapshot (`SCGR`, version 1)
//!
//! ```text
//! magic    [u8; 4] = "SCGR"
//! version  u32     = 1
//! n        u64
//! m        u64
//! per vertex 0..n: out_degree u32, then that many neighbor u32 ids (sorted)
//! dict     u8 flag; if 1, per vertex: name_len u32 + UTF-8 bytes
//! ```
//!
//! # Label index (`CSC1`, version 1)
//!
//! ```text
//! magic    [u8; 4] = "CSC1"
//! version  u32     = 1
//! flags    u32     bit 0: bipartite index, bit 1: some count was clamped
//! n        u64     indexed vertices (graph halves for a bipartite index)
//! ranks    n x u32 rank of each vertex under the frozen ordering
//! lengths  n x (in_len u32, out_len u32)
//! entries  per vertex: in-list then out-list, rank-sorted, one 64-bit
//!          word each in the codec layout (see [`crate::codec`])
//! flags    ceil(total_entries / 8) bytes; bit i set when the i-th entry
//!          (same order as above) is canonical
//! ```
//!
//! Inverted indexes are rebuilt on load rather than stored.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use thiserror::Error;

use crate::codec::{self, CodecError};
use crate::graph::{DirectedGraph, IdDictionary, VertexId};
use crate::label::{IndexMode, LabelEntry, LabelIndex, LabelSide};
use crate::order::VertexOrdering;

const GRAPH_MAGIC: [u8; 4] = *b"SCGR";
const INDEX_MAGIC: [u8; 4] = *b"CSC1";
const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum PersistError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("bad magic bytes, not a {0} file")]
    BadMagic(&'static str),
    #[error("unsupported format version {0}")]
    BadVersion(u32),
    #[error("file truncated or corrupt: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Codec(#[from] CodecError),
}

struct Writer<W: Write> {
    inner: W,
}

impl<W: Write> Writer<W> {
    fn u32(&mut self, v: u32) -> std::io::Result<()> {
        self.inner.write_all(&v.to_le_bytes())
    }
    fn u64(&mut self, v: u64) -> std::io::Result<()> {
        self.inner.write_all(&v.to_le_bytes())
    }
    fn bytes(&mut self, v: &[u8]) -> std::io::Result<()> {
        self.inner.write_all(v)
    }
}

struct Reader<R: Read> {
    inner: R,
}

impl<R: Read> Reader<R> {
    fn u32(&mut self) -> Result<u32, PersistError> {
        let mut buf = [0u8; 4];
        self.inner.read_exact(&mut buf)?;
        Ok(u32::from_le_bytes(buf))
    }
    fn u64(&mut self) -> Result<u64, PersistError> {
        let mut buf = [0u8; 8];
        self.inner.read_exact(&mut buf)?;
        Ok(u64::from_le_bytes(buf))
    }
    fn bytes(&mut self, n: usize) -> Result<Vec<u8>, PersistError> {
        let mut buf = vec![0u8; n];
        self.inner.read_exact(&mut buf)?;
        Ok(buf)
    }
}

/// Writes a graph snapshot, optionally with its id dictionary.
pub fn save_graph<W: Write>(
    w: W,
    g: &DirectedGraph,
    dict: Option<&IdDictionary>,
) -> Result<(), PersistError> {
    let mut w = Writer { inner: w };
    w.bytes(&GRAPH_MAGIC)?;
    w.u32(FORMAT_VERSION)?;
    w.u64(g.vertex_count() as u64)?;
    w.u64(g.edge_count() as u64)?;
    for v in 0..g.vertex_count() as VertexId {
        let nbrs = g.out_neighbors(v);
        w.u32(nbrs.len() as u32)?;
        for &u in nbrs {
            w.u32(u)?;
        }
    }
    match dict {
        None => w.bytes(&[0u8])?,
        Some(d) => {
            w.bytes(&[1u8])?;
            for name in d.names() {
                w.u32(name.len() as u32)?;
                w.bytes(name.as_bytes())?;
            }
        }
    }
    Ok(())
}

/// Reads a graph snapshot back.
pub fn load_graph<R: Read>(r: R) -> Result<(DirectedGraph, Option<IdDictionary>), PersistError> {
    let mut r = Reader { inner: r };
    if r.bytes(4)? != GRAPH_MAGIC {
        return Err(PersistError::BadMagic("graph snapshot"));
    }
    let version = r.u32()?;
    if version != FORMAT_VERSION {
        return Err(PersistError::BadVersion(version));
    }
    let n = r.u64()? as usize;
    let m = r.u64()? as usize;
    let mut g = DirectedGraph::new(n);
    for v in 0..n as VertexId {
        let deg = r.u32()? as usize;
        for _ in 0..deg {
            let u = r.u32()?;
            g.insert_edge(v, u)
                .map_err(|e| PersistError::Corrupt(e.to_string()))?;
        }
    }
    if g.edge_count() != m {
        return Err(PersistError::Corrupt(format!(
            "edge count mismatch: header {m}, body {}",
            g.edge_count()
        )));
    }
    let dict = match r.bytes(1)?[0] {
        0 => None,
        1 => {
            let mut names = Vec::with_capacity(n);
            for _ in 0..n {
                let len = r.u32()? as usize;
                let raw = r.bytes(len)?;
                names
                    .push(String::from_utf8(raw).map_err(|e| {
                        PersistError::Corrupt(format!("dictionary not UTF-8: {e}"))
                    })?);
            }
            Some(IdDictionary::from_names(names))
        }
        other => {
            return Err(PersistError::Corrupt(format!(
                "bad dictionary flag {other}"
            )))
        }
    };
    Ok((g, dict))
}

const FLAG_BIPARTITE: u32 = 1;
const FLAG_COUNT_CLAMPED: u32 = 2;

/// Writes an index. Counts above the codec's 24-bit field are clamped and
/// the header overflow flag is set.
pub fn save_index<W: Write>(w: W, idx: &LabelIndex) -> Result<(), PersistError> {
    let mut w = Writer { inner: w };
    let n = idx.vertex_count();
    w.bytes(&INDEX_MAGIC)?;
    w.u32(FORMAT_VERSION)?;

    // Entries are packed up front so the header can carry the clamp flag.
    let mut words: Vec<u64> = Vec::with_capacity(idx.total_entries());
    let mut canonical_bits: Vec<u8> = vec![0; idx.total_entries().div_ceil(8)];
    let mut clamped = false;
    let mut entry_no = 0usize;
    for v in 0..n as VertexId {
        for list in [idx.in_label(v), idx.out_label(v)] {
            for e in list {
                let hub_id = idx.ordering().vertex_at(e.hub_rank);
                let (word, c) = codec::encode_entry(hub_id, e.dist, e.count)?;
                clamped |= c;
                if e.canonical {
                    canonical_bits[entry_no / 8] |= 1 << (entry_no % 8);
                }
                words.push(word);
                entry_no += 1;
            }
        }
    }

    let mut flags = 0u32;
    if idx.mode() == IndexMode::Bipartite {
        flags |= FLAG_BIPARTITE;
    }
    if clamped || idx.counts_clamped() {
        flags |= FLAG_COUNT_CLAMPED;
    }
    w.u32(flags)?;
    w.u64(n as u64)?;
    for v in 0..n as VertexId {
        w.u32(idx.ordering().rank(v))?;
    }
    for v in 0..n as VertexId {
        w.u32(idx.in_label(v).len() as u32)?;
        w.u32(idx.out_label(v).len() as u32)?;
    }
    for word in words {
        w.u64(word)?;
    }
    w.bytes(&canonical_bits)?;
    Ok(())
}

/// Loaded index plus header facts that do not live in the structure.
#[derive(Debug)]
pub struct LoadedIndex {
    pub index: LabelIndex,
    /// Some stored count hit the codec's clamp when the file was written.
    pub counts_clamped: bool,
}

/// Reads an index and rebuilds its inverted indexes.
pub fn load_index<R: Read>(r: R) -> Result<LoadedIndex, PersistError> {
    let mut r = Reader { inner: r };
    if r.bytes(4)? != INDEX_MAGIC {
        return Err(PersistError::BadMagic("label index"));
    }
    let version = r.u32()?;
    if version != FORMAT_VERSION {
        return Err(PersistError::BadVersion(version));
    }
    let flags = r.u32()?;
    let mode = if flags & FLAG_BIPARTITE != 0 {
        IndexMode::Bipartite
    } else {
        IndexMode::Plain
    };
    let n = r.u64()? as usize;
    let mut ranks = Vec::with_capacity(n);
    for _ in 0..n {
        ranks.push(r.u32()?);
    }
    let ordering = VertexOrdering::from_ranks(ranks);
    let mut lens = Vec::with_capacity(n);
    for _ in 0..n {
        let in_len = r.u32()? as usize;
        let out_len = r.u32()? as usize;
        lens.push((in_len, out_len));
    }
    let total: usize = lens.iter().map(|&(a, b)| a + b).sum();
    let mut words = Vec::with_capacity(total);
    for _ in 0..total {
        words.push(r.u64()?);
    }
    let canonical_bits = r.bytes(total.div_ceil(8))?;

    let mut idx = LabelIndex::new(mode, ordering);
    let mut entry_no = 0usize;
    for (v, &(in_len, out_len)) in lens.iter().enumerate() {
        for (side, len) in [(LabelSide::In, in_len), (LabelSide::Out, out_len)] {
            for _ in 0..len {
                let packed = codec::decode_entry(words[entry_no]);
                if packed.hub_id as usize >= n {
                    return Err(PersistError::Corrupt(format!(
                        "hub id {} out of range",
                        packed.hub_id
                    )));
                }
                let canonical = canonical_bits[entry_no / 8] & (1 << (entry_no % 8)) != 0;
                let entry = LabelEntry {
                    hub_rank: idx.ordering().rank(packed.hub_id),
                    dist: packed.dist,
                    count: packed.count,
                    canonical,
                };
                idx.push(side, v as VertexId, entry);
                entry_no += 1;
            }
        }
    }
    idx.rebuild_inverted();
    idx.check_consistency().map_err(PersistError::Corrupt)?;
    let counts_clamped = flags & FLAG_COUNT_CLAMPED != 0;
    if counts_clamped {
        idx.mark_counts_clamped();
    }
    Ok(LoadedIndex {
        index: idx,
        counts_clamped,
    })
}

pub fn save_index_file<P: AsRef<Path>>(path: P, idx: &LabelIndex) -> Result<(), PersistError> {
    let mut w = BufWriter::new(File::create(path)?);
    save_index(&mut w, idx)?;
    w.flush()?;
    Ok(())
}

pub fn load_index_file<P: AsRef<Path>>(path: P) -> Result<LoadedIndex, PersistError> {
    load_index(BufReader::new(File::open(path)?))
}

pub fn save_graph_file<P: AsRef<Path>>(
    path: P,
    g: &DirectedGraph,
    dict: Option<&IdDictionary>,
) -> Result<(), PersistError> {
    let mut w = BufWriter::new(File::create(path)?);
    save_graph(&mut w, g, dict)?;
    w.flush()?;
    Ok(())
}

pub fn load_graph_file<P: AsRef<Path>>(
    path: P,
) -> Result<(DirectedGraph, Option<IdDictionary>), PersistError> {
    load_graph(BufReader::new(File::open(path)?))
}
