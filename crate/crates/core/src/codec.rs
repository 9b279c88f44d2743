//! Fixed 64-bit packing of label entries for the on-disk index format.
//!
//! Bit layout, least significant first:
//!
//! ```text
//! bits  0..23   hub vertex id   (23 bits)
//! bits 23..40   distance        (17 bits; all-ones reserved as a sentinel)
//! bits 40..64   path count      (24 bits; clamped, clamping is flagged)
//! ```

use thiserror::Error;

pub const HUB_BITS: u32 = 23;
pub const DIST_BITS: u32 = 17;
pub const COUNT_BITS: u32 = 24;

pub const MAX_HUB: u32 = (1 << HUB_BITS) - 1;
/// The all-ones distance pattern is reserved and never written.
pub const MAX_DIST: u32 = (1 << DIST_BITS) - 2;
pub const MAX_COUNT: u64 = (1 << COUNT_BITS) - 1;

const DIST_SHIFT: u32 = HUB_BITS;
const COUNT_SHIFT: u32 = HUB_BITS + DIST_BITS;
const DIST_SENTINEL: u32 = (1 << DIST_BITS) - 1;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodecError {
    #[error("hub id {0} exceeds the {HUB_BITS}-bit field; graph too large for this codec")]
    HubOutOfRange(u32),
    #[error("distance {0} exceeds the {DIST_BITS}-bit field")]
    DistOutOfRange(u32),
}

/// A packed entry as stored on disk: hub id, distance, clamped count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PackedEntry {
    pub hub_id: u32,
    pub dist: u32,
    pub count: u64,
}

/// Packs an entry into one 64-bit word. Counts above the 24-bit maximum are
/// clamped; the second return value reports whether clamping happened so the
/// caller can set the overflow flag in the file header.
pub fn encode_entry(hub_id: u32, dist: u32, count: u64) -> Result<(u64, bool), CodecError> {
    if hub_id > MAX_HUB {
        return Err(CodecError::HubOutOfRange(hub_id));
    }
    if dist > MAX_DIST {
        return Err(CodecError::DistOutOfRange(dist));
    }
    let clamped = count > MAX_COUNT;
    let count = count.min(MAX_COUNT);
    let word = (hub_id as u64) | ((dist as u64) << DIST_SHIFT) | (count << COUNT_SHIFT);
    Ok((word, clamped))
}

pub fn decode_entry(word: u64) -> PackedEntry {
    let hub_id = (word & MAX_HUB as u64) as u32;
    let dist = ((word >> DIST_SHIFT) as u32) & DIST_SENTINEL;
    let count = word >> COUNT_SHIFT;
    debug_assert_ne!(dist, DIST_SENTINEL, "reserved distance pattern on disk");
    PackedEntry {
        hub_id,
        dist,
        count,
    }
}
