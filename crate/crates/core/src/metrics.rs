//! Operation counters and the closed-form cost model for the bucket sorter.
//!
//! The model predicts, for `n` keys of `M` bits split `K` bits at a time:
//!
//! * `n * (M / K)` node relinks (each key is moved into a bucket once per
//!   level, and there are `M / K` levels),
//! * plus exactly `n` node visits across all of the end-splice merges,
//!
//! for a total of `n * (M / K + 1)` pointer operations. The auxiliary-memory
//! bound counts one bucket array of `2^K` link slots per live level, three
//! working links per level, and two top-level links.
//!
//! [`Counters`] is the measurement side of the model: an explicit context
//! struct threaded through every sort call. With the `counters` feature
//! disabled (it is on by default) the recording methods compile to nothing
//! and every tally stays zero; the sorted output is identical either way.

use crate::error::Error;

/// Tallies collected while a sort runs. All fields start at zero for each
/// invocation and only ever increase.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct Counters {
    /// Nodes relinked from an input chain into a bucket (or sign class).
    pub relink_count: u64,
    /// Nodes visited by end-splice merges: the length of the walked list,
    /// counted as one visit for its head plus one per advance.
    pub merge_visit_count: u64,
    /// Key comparisons executed by the comparison-based sorters.
    pub comparison_count: u64,
    /// Deepest recursion level reached; a level is counted when a call
    /// actually partitions its input, not for empty/single-node early exits.
    pub recursion_depth_max: u64,
    /// Most bucket arrays simultaneously allocated.
    pub live_bucket_arrays_max: u64,
    /// Occupied bucket slots drained after splits; empty slots are skipped
    /// via each level's occupancy bitmap and never visited.
    pub bucket_scans: u64,
}

impl Counters {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub(crate) fn record_relink(&mut self) {
        if cfg!(feature = "counters") {
            self.relink_count += 1;
        }
    }

    #[inline]
    pub(crate) fn record_merge_visit(&mut self) {
        if cfg!(feature = "counters") {
            self.merge_visit_count += 1;
        }
    }

    #[inline]
    pub(crate) fn record_comparison(&mut self) {
        if cfg!(feature = "counters") {
            self.comparison_count += 1;
        }
    }

    #[inline]
    pub(crate) fn note_depth(&mut self, depth: u64) {
        if cfg!(feature = "counters") {
            self.recursion_depth_max = self.recursion_depth_max.max(depth);
        }
    }

    #[inline]
    pub(crate) fn note_live_bucket_arrays(&mut self, live: u64) {
        if cfg!(feature = "counters") {
            self.live_bucket_arrays_max = self.live_bucket_arrays_max.max(live);
        }
    }

    #[inline]
    pub(crate) fn record_bucket_scans(&mut self, slots: u64) {
        if cfg!(feature = "counters") {
            self.bucket_scans += slots;
        }
    }
}

fn check_widths(bit_width: u32, pattern_width: u32) -> Result<(), Error> {
    if !matches!(bit_width, 8 | 16 | 32 | 64) {
        return Err(Error::InvalidBitWidth(bit_width));
    }
    if !matches!(pattern_width, 1 | 2 | 4 | 8 | 16) {
        return Err(Error::InvalidPatternWidth(pattern_width));
    }
    if !bit_width.is_multiple_of(pattern_width) {
        return Err(Error::PatternMismatch {
            bit_width,
            pattern_width,
        });
    }
    Ok(())
}

/// Pointer operations per key: `M / K` relinks plus one merge visit.
///
/// For 32-bit keys split a nibble at a time this is `32/4 + 1 = 9`.
pub fn coefficient(bit_width: u32, pattern_width: u32) -> Result<u64, Error> {
    check_widths(bit_width, pattern_width)?;
    Ok(u64::from(bit_width / pattern_width) + 1)
}

/// Total pointer operations for a run: `n * (M / K) + n`.
pub fn predicted_ops(n: u64, bit_width: u32, pattern_width: u32) -> Result<u64, Error> {
    Ok(n * coefficient(bit_width, pattern_width)?)
}

/// Auxiliary-memory model for one sort invocation.
///
/// `slot_size` is the assumed size in bytes of a link slot; the default of 4
/// matches the 32-bit-pointer machines the model was calibrated on, so the
/// bound is a model figure, not a measurement of this process.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MemoryModel {
    pub bit_width: u32,
    pub pattern_width: u32,
    pub slot_size: u64,
}

impl MemoryModel {
    pub fn new(bit_width: u32, pattern_width: u32) -> Self {
        Self {
            bit_width,
            pattern_width,
            slot_size: 4,
        }
    }

    /// Worst-case auxiliary bytes: `(2^K + 3) * slot` per level times `M / K`
    /// levels, plus `2 * slot` at top level.
    pub fn aux_memory_bound(&self) -> Result<u64, Error> {
        check_widths(self.bit_width, self.pattern_width)?;
        let levels = u64::from(self.bit_width / self.pattern_width);
        let slots_per_level = (1u64 << self.pattern_width) + 3;
        Ok(slots_per_level * self.slot_size * levels + 2 * self.slot_size)
    }
}
