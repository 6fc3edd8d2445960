//! The pbit sorter: a most-significant-first bit-pattern bucket sort for
//! linked lists.
//!
//! Each level peels the top `K` unseen bits off every key and relinks the
//! node into one of `2^K` buckets — no comparisons, no copies, one pointer
//! write per node. Levels recurse per bucket until all `M` key bits are
//! consumed; the deepest level splices its buckets together with an
//! end-marker walk, so the whole sort costs `n * (M/K)` relinks plus exactly
//! `n` merge visits, independent of the key distribution.
//!
//! Two properties fall out of the construction and are leaned on heavily:
//!
//! * **Direction by visit order.** Splicing buckets from slot 0 upward emits
//!   the largest patterns first (descending); visiting from the top slot
//!   down emits ascending. Same relinks either way.
//! * **Stability by parity.** Bucket insertion prepends, which reverses the
//!   relative order of equal keys once per level. Equal keys share every
//!   bucket on all `M/K` levels, so their input order is restored exactly
//!   when `M/K` is even. Configurations requesting stability with an odd
//!   level count are rejected up front.
//!
//! Signed keys get a pre-pass that splits the list into negative and
//! non-negative chains — appending at the tail, which keeps equal keys in
//! input order — and then sorts the two chains back-to-back through the
//! end marker. Two's-complement patterns already order correctly within each
//! sign class.

use crate::error::Error;
use crate::list::{Link, LinkedList, NodeArena};
use crate::metrics::Counters;
use std::cmp::Ordering;

/// Shape of the keys being sorted: how many bits carry information and
/// whether the top bit is a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KeyDescriptor {
    bit_width: u32,
    signed: bool,
}

impl KeyDescriptor {
    pub fn new(bit_width: u32, signed: bool) -> Result<Self, Error> {
        if !matches!(bit_width, 8 | 16 | 32 | 64) {
            return Err(Error::InvalidBitWidth(bit_width));
        }
        Ok(Self { bit_width, signed })
    }

    pub fn bit_width(&self) -> u32 {
        self.bit_width
    }

    pub fn is_signed(&self) -> bool {
        self.signed
    }

    pub(crate) fn mask(&self) -> u64 {
        if self.bit_width == 64 {
            u64::MAX
        } else {
            (1u64 << self.bit_width) - 1
        }
    }

    /// Smallest and largest representable key values, as `i64`.
    ///
    /// The one shape that does not fit is unsigned 64-bit, whose upper half
    /// exceeds `i64`; its reported maximum caps at `i64::MAX`. Pattern-level
    /// operations ([`KeyDescriptor::compare`], the sorters) handle the full
    /// unsigned range regardless.
    pub fn key_bounds(&self) -> (i64, i64) {
        match (self.signed, self.bit_width) {
            (true, 64) => (i64::MIN, i64::MAX),
            (true, m) => {
                let half = 1i64 << (m - 1);
                (-half, half - 1)
            }
            (false, 64) => (0, i64::MAX),
            (false, m) => (0, (1i64 << m) - 1),
        }
    }

    /// Two's-complement bit pattern for a key value, in the low `M` bits.
    pub fn encode(&self, key: i64) -> Result<u64, Error> {
        let (lo, hi) = self.key_bounds();
        if key < lo || key > hi {
            return Err(Error::KeyOutOfRange {
                key,
                bit_width: self.bit_width,
                signedness: if self.signed { "signed" } else { "unsigned" },
            });
        }
        Ok((key as u64) & self.mask())
    }

    /// Key value for a stored pattern. Inverse of [`KeyDescriptor::encode`]
    /// over that function's domain.
    pub fn decode(&self, pattern: u64) -> i64 {
        let p = pattern & self.mask();
        if self.signed && (p >> (self.bit_width - 1)) & 1 == 1 {
            (p | !self.mask()) as i64
        } else {
            p as i64
        }
    }

    /// Orders two stored patterns as key values.
    pub fn compare(&self, a: u64, b: u64) -> Ordering {
        if self.signed {
            self.decode(a).cmp(&self.decode(b))
        } else {
            (a & self.mask()).cmp(&(b & self.mask()))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SortOrder {
    Ascending,
    Descending,
}

/// Sort parameters: pattern width `K` (so `2^K` buckets per level), output
/// direction, and whether equal keys must keep their input order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PbitConfig {
    pattern_width: u32,
    pub order: SortOrder,
    /// When set (the default), configurations whose level count `M/K` is odd
    /// are rejected, because each level reverses equal-key runs once.
    pub stable: bool,
}

impl PbitConfig {
    pub fn new(pattern_width: u32, order: SortOrder) -> Result<Self, Error> {
        if !matches!(pattern_width, 1 | 2 | 4 | 8 | 16) {
            return Err(Error::InvalidPatternWidth(pattern_width));
        }
        Ok(Self {
            pattern_width,
            order,
            stable: true,
        })
    }

    pub fn pattern_width(&self) -> u32 {
        self.pattern_width
    }

    /// Buckets per level: `2^K`.
    pub fn bucket_count(&self) -> usize {
        1usize << self.pattern_width
    }

    /// Checks this configuration against a key shape without touching any
    /// list, so callers can fail before anything is consumed.
    pub fn validate_for(&self, kd: &KeyDescriptor) -> Result<(), Error> {
        let m = kd.bit_width();
        let k = self.pattern_width;
        if !m.is_multiple_of(k) {
            return Err(Error::PatternMismatch {
                bit_width: m,
                pattern_width: k,
            });
        }
        if self.stable && (m / k) % 2 == 1 {
            return Err(Error::OddLevelParity {
                bit_width: m,
                pattern_width: k,
            });
        }
        Ok(())
    }
}

/// The bucket slot for a key at a given level: `(key >> shift)` masked to
/// the low `pattern_width` bits.
#[inline]
pub fn extract_bits(key: u64, shift: u32, pattern_width: u32) -> usize {
    debug_assert!((1..=16).contains(&pattern_width));
    debug_assert!(shift + pattern_width <= 64);
    let mask = (1u64 << pattern_width) - 1;
    ((key >> shift) & mask) as usize
}

/// A level's bucket table plus an occupancy bitmap over its slots. The
/// bitmap is what keeps sparse levels cheap: draining walks set bits only,
/// never sweeping the `2^K` slots, which matters enormously deep in the
/// recursion where most calls fill one or two buckets.
struct LevelTable {
    slots: Vec<Link>,
    occupancy: Vec<u64>,
}

impl LevelTable {
    fn new(bucket_count: usize) -> Self {
        Self {
            slots: vec![None; bucket_count],
            occupancy: vec![0; bucket_count.div_ceil(64)],
        }
    }
}

/// One bucket table per recursion level, allocated lazily and reused by all
/// calls at that depth. The drain loop takes every slot and occupancy bit it
/// set, so a table is all-empty again before a sibling call reuses it.
pub(crate) struct BucketScratch {
    levels: Vec<LevelTable>,
    pattern_width: u32,
    bucket_count: usize,
}

impl BucketScratch {
    pub(crate) fn new(pattern_width: u32) -> Self {
        Self {
            levels: Vec::new(),
            pattern_width,
            bucket_count: 1usize << pattern_width,
        }
    }

    fn ensure_level(&mut self, depth: usize, counters: &mut Counters) {
        while self.levels.len() < depth {
            self.levels.push(LevelTable::new(self.bucket_count));
            counters.note_live_bucket_arrays(self.levels.len() as u64);
        }
    }
}

/// Relinks every node of `cursor`'s chain into `buckets` by its pattern at
/// `shift`. Prepending makes each bucket hold its members in reverse input
/// order.
fn split_links(
    arena: &mut NodeArena,
    mut cursor: Link,
    shift: u32,
    pattern_width: u32,
    buckets: &mut [Link],
    counters: &mut Counters,
) {
    while let Some(node) = cursor {
        cursor = arena.take_next(node);
        let slot = extract_bits(arena.key(node), shift, pattern_width);
        arena.set_next(node, buckets[slot]);
        buckets[slot] = Some(node);
        counters.record_relink();
    }
}

/// [`split_links`] into a level table, maintaining its occupancy bitmap.
fn split_links_tracked(
    arena: &mut NodeArena,
    mut cursor: Link,
    shift: u32,
    pattern_width: u32,
    table: &mut LevelTable,
    counters: &mut Counters,
) {
    while let Some(node) = cursor {
        cursor = arena.take_next(node);
        let slot = extract_bits(arena.key(node), shift, pattern_width);
        arena.set_next(node, table.slots[slot]);
        table.slots[slot] = Some(node);
        table.occupancy[slot >> 6] |= 1u64 << (slot & 63);
        counters.record_relink();
    }
}

/// Core recursion over `remaining` bits of the window starting `base` bits
/// up from the key's least significant bit. Integer sorts use `base == 0`;
/// the float sorter aims the same machinery at the mantissa and exponent
/// fields.
#[allow(clippy::too_many_arguments)]
pub(crate) fn pbit_links(
    arena: &mut NodeArena,
    scratch: &mut BucketScratch,
    head: Link,
    base: u32,
    remaining: u32,
    marker: Link,
    order: SortOrder,
    counters: &mut Counters,
    depth: usize,
) -> Link {
    if head.is_none() {
        return marker;
    }
    let k = scratch.pattern_width;
    counters.note_depth(depth as u64);
    scratch.ensure_level(depth, counters);
    let shift = base + remaining - k;
    {
        let table = &mut scratch.levels[depth - 1];
        split_links_tracked(arena, head, shift, k, table, counters);
    }

    // Each drained bucket chains onto the accumulator, so the slot visited
    // last ends up at the output head: ascending output walks occupied slots
    // from the top down, descending from the bottom up.
    let next_remaining = remaining - k;
    let mut acc = marker;
    let words = scratch.levels[depth - 1].occupancy.len();
    match order {
        SortOrder::Descending => {
            for w in 0..words {
                let mut word = std::mem::take(&mut scratch.levels[depth - 1].occupancy[w]);
                while word != 0 {
                    let bit = word.trailing_zeros() as usize;
                    word &= word - 1;
                    acc = drain_slot(
                        arena,
                        scratch,
                        (w << 6) | bit,
                        base,
                        next_remaining,
                        acc,
                        order,
                        counters,
                        depth,
                    );
                }
            }
        }
        SortOrder::Ascending => {
            for w in (0..words).rev() {
                let mut word = std::mem::take(&mut scratch.levels[depth - 1].occupancy[w]);
                while word != 0 {
                    let bit = 63 - word.leading_zeros() as usize;
                    word ^= 1u64 << bit;
                    acc = drain_slot(
                        arena,
                        scratch,
                        (w << 6) | bit,
                        base,
                        next_remaining,
                        acc,
                        order,
                        counters,
                        depth,
                    );
                }
            }
        }
    }
    acc
}

#[allow(clippy::too_many_arguments)]
fn drain_slot(
    arena: &mut NodeArena,
    scratch: &mut BucketScratch,
    slot: usize,
    base: u32,
    next_remaining: u32,
    acc: Link,
    order: SortOrder,
    counters: &mut Counters,
    depth: usize,
) -> Link {
    counters.record_bucket_scans(1);
    let bucket = scratch.levels[depth - 1].slots[slot].take();
    if next_remaining > 0 {
        pbit_links(
            arena,
            scratch,
            bucket,
            base,
            next_remaining,
            acc,
            order,
            counters,
            depth + 1,
        )
    } else {
        arena.merge_links(bucket, acc, counters)
    }
}

/// Splits the chain at `bit` into `(set, clear)` classes, appending at each
/// class tail. Appending — rather than the cheaper prepend — keeps equal
/// keys in input order, which the even split-level parity then preserves.
pub(crate) fn partition_by_bit(
    arena: &mut NodeArena,
    mut cursor: Link,
    bit: u32,
    counters: &mut Counters,
) -> (Link, Link) {
    let mut set: (Link, Link) = (None, None);
    let mut clear: (Link, Link) = (None, None);
    while let Some(node) = cursor {
        cursor = arena.take_next(node);
        let class = if (arena.key(node) >> bit) & 1 == 1 {
            &mut set
        } else {
            &mut clear
        };
        match class.1 {
            Some(tail) => arena.set_next(tail, Some(node)),
            None => class.0 = Some(node),
        }
        class.1 = Some(node);
        counters.record_relink();
    }
    (set.0, clear.0)
}

/// Sorts a list of keys described by `kd` into `cfg.order`.
///
/// Unsigned keys run straight through the bucket recursion. Signed keys are
/// first partitioned by sign bit, then the two classes are sorted
/// back-to-back: ascending emits negatives (whose two's-complement patterns
/// already order correctly among themselves) ahead of non-negatives.
///
/// Configuration problems are reported before the list is touched.
///
/// ```
/// use listsort_core::{pbit, Counters, KeyDescriptor, NodeArena, PbitConfig, SortOrder};
///
/// let kd = KeyDescriptor::new(32, true).unwrap();
/// let cfg = PbitConfig::new(4, SortOrder::Ascending).unwrap();
/// let mut arena = NodeArena::new();
/// let keys: Vec<u64> = [-3i64, 5, -1, 0]
///     .iter()
///     .map(|&v| kd.encode(v).unwrap())
///     .collect();
/// let list = arena.from_sequence(&keys).unwrap();
/// let sorted = pbit::sort(&mut arena, list, &kd, &cfg, &mut Counters::new()).unwrap();
/// let values: Vec<i64> = arena
///     .to_sequence(&sorted)
///     .into_iter()
///     .map(|p| kd.decode(p))
///     .collect();
/// assert_eq!(values, [-3, -1, 0, 5]);
/// ```
pub fn sort(
    arena: &mut NodeArena,
    list: LinkedList,
    kd: &KeyDescriptor,
    cfg: &PbitConfig,
    counters: &mut Counters,
) -> Result<LinkedList, Error> {
    cfg.validate_for(kd)?;
    let len = list.len();
    let m = kd.bit_width();
    let head = list.into_head();
    #[cfg(debug_assertions)]
    {
        let mut cursor = head;
        while let Some(node) = cursor {
            debug_assert_eq!(
                arena.key(node) & !kd.mask(),
                0,
                "key pattern wider than the descriptor"
            );
            cursor = arena.next(node);
        }
    }
    let mut scratch = BucketScratch::new(cfg.pattern_width);
    let sorted = if kd.is_signed() {
        let (negative, non_negative) = partition_by_bit(arena, head, m - 1, counters);
        match cfg.order {
            SortOrder::Ascending => {
                let tail = pbit_links(
                    arena, &mut scratch, non_negative, 0, m, None, cfg.order, counters, 1,
                );
                pbit_links(arena, &mut scratch, negative, 0, m, tail, cfg.order, counters, 1)
            }
            SortOrder::Descending => {
                let tail =
                    pbit_links(arena, &mut scratch, negative, 0, m, None, cfg.order, counters, 1);
                pbit_links(
                    arena, &mut scratch, non_negative, 0, m, tail, cfg.order, counters, 1,
                )
            }
        }
    } else {
        pbit_links(arena, &mut scratch, head, 0, m, None, cfg.order, counters, 1)
    };
    let out = LinkedList::from_raw(sorted, len);
    arena.debug_check(&out);
    Ok(out)
}

/// One exposed turn of the recursion: sorts `list` on its low
/// `remaining_bits` (which must be a positive multiple of the pattern
/// width), splicing the already-sorted `marker` after everything emitted.
pub fn pbit_recursive(
    arena: &mut NodeArena,
    list: LinkedList,
    remaining_bits: u32,
    marker: LinkedList,
    cfg: &PbitConfig,
    counters: &mut Counters,
) -> Result<LinkedList, Error> {
    let k = cfg.pattern_width;
    if remaining_bits == 0 || remaining_bits > 64 || !remaining_bits.is_multiple_of(k) {
        return Err(Error::PatternMismatch {
            bit_width: remaining_bits,
            pattern_width: k,
        });
    }
    debug_assert!(
        patterns_ordered(arena, marker.head(), cfg.order),
        "marker must already be sorted"
    );
    let len = list.len() + marker.len();
    let mut scratch = BucketScratch::new(k);
    let head = pbit_links(
        arena,
        &mut scratch,
        list.into_head(),
        0,
        remaining_bits,
        marker.into_head(),
        cfg.order,
        counters,
        1,
    );
    let out = LinkedList::from_raw(head, len);
    arena.debug_check(&out);
    Ok(out)
}

/// One exposed split step: distributes the list into `2^K` buckets by the
/// pattern at `shift` and hands every bucket back. Consumes the input; the
/// returned buckets hold their members in reverse input order.
pub fn split_into_buckets(
    arena: &mut NodeArena,
    list: LinkedList,
    shift: u32,
    cfg: &PbitConfig,
    counters: &mut Counters,
) -> Vec<LinkedList> {
    let k = cfg.pattern_width;
    debug_assert!(shift + k <= 64, "shift must leave room for the pattern");
    let mut table: Vec<Link> = vec![None; cfg.bucket_count()];
    split_links(arena, list.into_head(), shift, k, &mut table, counters);
    table
        .into_iter()
        .map(|head| {
            let len = arena.chain_len(head);
            LinkedList::from_raw(head, len)
        })
        .collect()
}

fn patterns_ordered(arena: &NodeArena, head: Link, order: SortOrder) -> bool {
    let mut cursor = head;
    while let Some(node) = cursor {
        let Some(next) = arena.next(node) else { break };
        let (a, b) = (arena.key(node), arena.key(next));
        let ok = match order {
            SortOrder::Ascending => a <= b,
            SortOrder::Descending => a >= b,
        };
        if !ok {
            return false;
        }
        cursor = Some(next);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: [u64; 8] = [21, 3, 209, 14, 156, 47, 3, 214];

    fn cfg(k: u32, order: SortOrder) -> PbitConfig {
        PbitConfig::new(k, order).unwrap()
    }

    #[test]
    fn extract_bits_selects_the_pattern() {
        assert_eq!(extract_bits(123, 3, 4), 15);
        assert_eq!(extract_bits(209, 4, 4), 13);
        assert_eq!(extract_bits(214, 4, 4), 13);
        assert_eq!(extract_bits(214, 0, 4), 6);
        assert_eq!(extract_bits(u64::MAX, 48, 16), 0xFFFF);
        assert_eq!(extract_bits(0, 60, 4), 0);
    }

    #[test]
    fn split_buckets_by_high_pattern() {
        let mut arena = NodeArena::new();
        let list = arena.from_sequence(&SAMPLE).unwrap();
        let mut counters = Counters::new();
        let buckets = split_into_buckets(
            &mut arena,
            list,
            4,
            &cfg(4, SortOrder::Ascending),
            &mut counters,
        );
        assert_eq!(buckets.len(), 16);
        // Members sit in reverse input order within each bucket.
        assert_eq!(arena.to_sequence(&buckets[0]), [3, 14, 3]);
        assert_eq!(arena.to_sequence(&buckets[1]), [21]);
        assert_eq!(arena.to_sequence(&buckets[2]), [47]);
        assert_eq!(arena.to_sequence(&buckets[9]), [156]);
        assert_eq!(arena.to_sequence(&buckets[13]), [214, 209]);
        for idx in [3, 4, 5, 6, 7, 8, 10, 11, 12, 14, 15] {
            assert!(buckets[idx].is_empty());
        }
        if cfg!(feature = "counters") {
            assert_eq!(counters.relink_count, 8);
        }
    }

    #[test]
    fn sorts_the_byte_sample_both_ways() {
        let kd = KeyDescriptor::new(8, false).unwrap();
        for (order, expected) in [
            (
                SortOrder::Ascending,
                vec![3, 3, 14, 21, 47, 156, 209, 214],
            ),
            (
                SortOrder::Descending,
                vec![214, 209, 156, 47, 21, 14, 3, 3],
            ),
        ] {
            let mut arena = NodeArena::new();
            let list = arena.from_sequence(&SAMPLE).unwrap();
            let mut counters = Counters::new();
            let sorted = sort(&mut arena, list, &kd, &cfg(4, order), &mut counters).unwrap();
            assert_eq!(arena.to_sequence(&sorted), expected);
            if cfg!(feature = "counters") {
                assert_eq!(counters.relink_count, 16);
                assert_eq!(counters.merge_visit_count, 8);
                assert_eq!(counters.recursion_depth_max, 2);
                assert_eq!(counters.live_bucket_arrays_max, 2);
            }
        }
    }

    #[test]
    fn equal_keys_keep_input_order() {
        // The two 3s enter at positions 1 and 6 and must leave in that order.
        let mut arena = NodeArena::new();
        let list = arena.from_sequence(&SAMPLE).unwrap();
        let kd = KeyDescriptor::new(8, false).unwrap();
        let sorted = sort(
            &mut arena,
            list,
            &kd,
            &cfg(4, SortOrder::Ascending),
            &mut Counters::new(),
        )
        .unwrap();
        assert_eq!(arena.to_pairs(&sorted)[..2], [(3, 1), (3, 6)]);
    }

    #[test]
    fn signed_sort_orders_across_zero() {
        let kd = KeyDescriptor::new(32, true).unwrap();
        let keys: Vec<u64> = [-3i64, 5, -1, 0]
            .iter()
            .map(|&v| kd.encode(v).unwrap())
            .collect();

        let mut arena = NodeArena::new();
        let list = arena.from_sequence(&keys).unwrap();
        let sorted = sort(
            &mut arena,
            list,
            &kd,
            &cfg(4, SortOrder::Ascending),
            &mut Counters::new(),
        )
        .unwrap();
        let values: Vec<i64> = arena
            .to_sequence(&sorted)
            .into_iter()
            .map(|p| kd.decode(p))
            .collect();
        assert_eq!(values, [-3, -1, 0, 5]);

        let mut arena = NodeArena::new();
        let list = arena.from_sequence(&keys).unwrap();
        let sorted = sort(
            &mut arena,
            list,
            &kd,
            &cfg(4, SortOrder::Descending),
            &mut Counters::new(),
        )
        .unwrap();
        let values: Vec<i64> = arena
            .to_sequence(&sorted)
            .into_iter()
            .map(|p| kd.decode(p))
            .collect();
        assert_eq!(values, [5, 0, -1, -3]);
    }

    #[test]
    fn signed_sort_adds_one_relink_per_node_for_the_sign_pass() {
        let kd = KeyDescriptor::new(32, true).unwrap();
        let keys: Vec<u64> = [-7i64, 7, -7, 0, 42, -1]
            .iter()
            .map(|&v| kd.encode(v).unwrap())
            .collect();
        let mut arena = NodeArena::new();
        let list = arena.from_sequence(&keys).unwrap();
        let mut counters = Counters::new();
        let _ = sort(
            &mut arena,
            list,
            &kd,
            &cfg(4, SortOrder::Ascending),
            &mut counters,
        )
        .unwrap();
        if cfg!(feature = "counters") {
            let n = keys.len() as u64;
            assert_eq!(counters.relink_count, n + n * 8);
            assert_eq!(counters.merge_visit_count, n);
        }
    }

    #[test]
    fn config_validation_happens_before_any_mutation() {
        let mut arena = NodeArena::new();
        let list = arena.from_sequence(&[9, 1, 5]).unwrap();
        let head = list.head();
        let kd = KeyDescriptor::new(8, false).unwrap();
        let err = sort(
            &mut arena,
            list,
            &kd,
            &cfg(16, SortOrder::Ascending),
            &mut Counters::new(),
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::PatternMismatch {
                bit_width: 8,
                pattern_width: 16
            }
        );
        // The chain is exactly as built.
        let mut keys = Vec::new();
        let mut cursor = head;
        while let Some(node) = cursor {
            keys.push(arena.key(node));
            cursor = arena.next(node);
        }
        assert_eq!(keys, [9, 1, 5]);
    }

    #[test]
    fn odd_level_parity_is_rejected_only_when_stability_is_requested() {
        let kd = KeyDescriptor::new(8, false).unwrap();
        let stable = cfg(8, SortOrder::Ascending);
        assert_eq!(
            stable.validate_for(&kd),
            Err(Error::OddLevelParity {
                bit_width: 8,
                pattern_width: 8
            })
        );

        let mut relaxed = stable;
        relaxed.stable = false;
        let mut arena = NodeArena::new();
        let list = arena.from_sequence(&SAMPLE).unwrap();
        let sorted = sort(&mut arena, list, &kd, &relaxed, &mut Counters::new()).unwrap();
        assert_eq!(
            arena.to_sequence(&sorted),
            [3, 3, 14, 21, 47, 156, 209, 214]
        );
    }

    #[test]
    fn recursive_step_returns_the_marker_for_an_empty_list() {
        let mut arena = NodeArena::new();
        let marker = arena.from_sequence(&[1, 2, 3]).unwrap();
        let mut counters = Counters::new();
        let out = pbit_recursive(
            &mut arena,
            LinkedList::empty(),
            32,
            marker,
            &cfg(4, SortOrder::Ascending),
            &mut counters,
        )
        .unwrap();
        assert_eq!(arena.to_sequence(&out), [1, 2, 3]);
        assert_eq!(counters, Counters::new());
    }

    #[test]
    fn recursive_step_sorts_and_appends_the_marker() {
        let mut arena = NodeArena::new();
        let list = arena.from_sequence(&SAMPLE).unwrap();
        let marker = arena.from_sequence(&[250, 251]).unwrap();
        let out = pbit_recursive(
            &mut arena,
            list,
            8,
            marker,
            &cfg(4, SortOrder::Ascending),
            &mut Counters::new(),
        )
        .unwrap();
        assert_eq!(
            arena.to_sequence(&out),
            [3, 3, 14, 21, 47, 156, 209, 214, 250, 251]
        );
        assert_eq!(out.len(), 10);
    }

    #[test]
    fn recursive_step_rejects_bit_counts_the_pattern_cannot_tile() {
        let mut arena = NodeArena::new();
        let list = arena.from_sequence(&[1]).unwrap();
        let err = pbit_recursive(
            &mut arena,
            list,
            10,
            LinkedList::empty(),
            &cfg(4, SortOrder::Ascending),
            &mut Counters::new(),
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::PatternMismatch {
                bit_width: 10,
                pattern_width: 4
            }
        );
    }

    #[test]
    fn empty_sort_leaves_all_counters_at_zero() {
        let kd = KeyDescriptor::new(32, false).unwrap();
        let mut arena = NodeArena::new();
        let mut counters = Counters::new();
        let out = sort(
            &mut arena,
            LinkedList::empty(),
            &kd,
            &cfg(4, SortOrder::Ascending),
            &mut counters,
        )
        .unwrap();
        assert!(out.is_empty());
        assert_eq!(counters, Counters::new());
    }

    #[test]
    fn single_node_still_descends_every_level() {
        let kd = KeyDescriptor::new(32, false).unwrap();
        let mut arena = NodeArena::new();
        let list = arena.from_sequence(&[0xDEAD_BEEF]).unwrap();
        let mut counters = Counters::new();
        let out = sort(
            &mut arena,
            list,
            &kd,
            &cfg(4, SortOrder::Ascending),
            &mut counters,
        )
        .unwrap();
        assert_eq!(arena.to_sequence(&out), [0xDEAD_BEEF]);
        if cfg!(feature = "counters") {
            assert_eq!(counters.relink_count, 8);
            assert_eq!(counters.merge_visit_count, 1);
            assert_eq!(counters.recursion_depth_max, 8);
            assert_eq!(counters.live_bucket_arrays_max, 8);
            // One occupied slot drained per level.
            assert_eq!(counters.bucket_scans, 8);
        }
    }

    #[test]
    fn key_descriptor_encodes_and_decodes_every_shape() {
        let i8d = KeyDescriptor::new(8, true).unwrap();
        assert_eq!(i8d.encode(-3).unwrap(), 0xFD);
        assert_eq!(i8d.decode(0xFD), -3);
        assert_eq!(i8d.key_bounds(), (-128, 127));
        assert_eq!(
            i8d.encode(128),
            Err(Error::KeyOutOfRange {
                key: 128,
                bit_width: 8,
                signedness: "signed"
            })
        );

        let u8d = KeyDescriptor::new(8, false).unwrap();
        assert_eq!(u8d.encode(255).unwrap(), 255);
        assert!(u8d.encode(-1).is_err());

        let i64d = KeyDescriptor::new(64, true).unwrap();
        assert_eq!(i64d.encode(i64::MIN).unwrap(), 1u64 << 63);
        assert_eq!(i64d.decode(1u64 << 63), i64::MIN);
        assert_eq!(
            i64d.compare(i64d.encode(-5).unwrap(), i64d.encode(3).unwrap()),
            Ordering::Less
        );

        let u64d = KeyDescriptor::new(64, false).unwrap();
        assert_eq!(u64d.compare(u64::MAX, 0), Ordering::Greater);

        assert_eq!(KeyDescriptor::new(12, false), Err(Error::InvalidBitWidth(12)));
    }

    #[test]
    fn sixteen_bit_patterns_use_the_wide_table() {
        let kd = KeyDescriptor::new(32, false).unwrap();
        let mut arena = NodeArena::new();
        let keys = [0xFFFF_0001u64, 0x0000_FFFF, 0x8000_0000, 0x7FFF_FFFF, 0];
        let list = arena.from_sequence(&keys).unwrap();
        let mut counters = Counters::new();
        let sorted = sort(
            &mut arena,
            list,
            &kd,
            &cfg(16, SortOrder::Ascending),
            &mut counters,
        )
        .unwrap();
        assert_eq!(
            arena.to_sequence(&sorted),
            [0, 0x0000_FFFF, 0x7FFF_FFFF, 0x8000_0000, 0xFFFF_0001]
        );
        if cfg!(feature = "counters") {
            assert_eq!(counters.relink_count, 10);
            assert_eq!(counters.recursion_depth_max, 2);
        }
    }
}
