//! Sorting single-precision floats with the bucket machinery.
//!
//! IEEE-754 orders finite same-sign floats exactly like their bit patterns,
//! so a float sort reduces to integer passes over the pattern fields: split
//! off the sign classes, sort each class by mantissa and then by exponent
//! (two stable bucket passes, least significant field first), and reverse
//! the negative class, whose larger patterns mean smaller numbers.
//!
//! NaN and the infinities have no place on the number line; a list
//! containing one is rejected before anything is relinked.

use crate::error::Error;
use crate::list::{Link, LinkedList, NodeArena};
use crate::metrics::Counters;
use crate::pbit::{partition_by_bit, pbit_links, BucketScratch, PbitConfig, SortOrder};

const MANTISSA_BITS: u32 = 23;
const EXPONENT_BITS: u32 = 8;
const SIGN_BIT: u32 = 31;

/// The three fields of a single-precision float pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FloatFields {
    /// 1 for negative values (including -0.0).
    pub sign: u8,
    /// Biased exponent, 0..=254 for finite values.
    pub exponent: u8,
    /// 23-bit fraction field.
    pub mantissa: u32,
}

impl FloatFields {
    /// Reassembles the exact value the fields came from.
    pub fn recompose(&self) -> f32 {
        let bits = (u32::from(self.sign) << SIGN_BIT)
            | (u32::from(self.exponent) << MANTISSA_BITS)
            | (self.mantissa & ((1 << MANTISSA_BITS) - 1));
        f32::from_bits(bits)
    }
}

/// Splits a finite float into sign, biased exponent, and mantissa.
pub fn decompose_float(value: f32) -> Result<FloatFields, Error> {
    if !value.is_finite() {
        return Err(Error::NonFiniteValue(value));
    }
    let bits = value.to_bits();
    Ok(FloatFields {
        sign: (bits >> SIGN_BIT) as u8,
        exponent: ((bits >> MANTISSA_BITS) & 0xFF) as u8,
        mantissa: bits & ((1 << MANTISSA_BITS) - 1),
    })
}

/// Builds a chain keyed by the bit patterns of `values`, payloads numbered
/// by position. Values are taken as-is; [`sort_floats`] is where non-finite
/// keys get rejected.
pub fn from_f32_sequence(arena: &mut NodeArena, values: &[f32]) -> Result<LinkedList, Error> {
    let mut list = LinkedList::empty();
    for (position, &value) in values.iter().enumerate().rev() {
        arena.push(&mut list, u64::from(value.to_bits()), position as u64)?;
    }
    Ok(list)
}

/// The float values of a chain built by [`from_f32_sequence`].
pub fn to_f32_sequence(arena: &NodeArena, list: &LinkedList) -> Vec<f32> {
    arena
        .iter(list)
        .map(|n| f32::from_bits(arena.key(n) as u32))
        .collect()
}

fn reverse_onto(arena: &mut NodeArena, mut cursor: Link, onto: Link) -> Link {
    let mut acc = onto;
    while let Some(node) = cursor {
        cursor = arena.take_next(node);
        arena.set_next(node, acc);
        acc = Some(node);
    }
    acc
}

/// Runs the two stable field passes over one sign class. The mantissa pass
/// covers the low 24 bits and so takes in the exponent's lowest bit; that
/// bit is owned by the later exponent pass, which leaves ties to resolve by
/// mantissa as required.
fn sort_magnitudes(
    arena: &mut NodeArena,
    scratch: &mut BucketScratch,
    head: Link,
    marker: Link,
    order: SortOrder,
    counters: &mut Counters,
) -> Link {
    let by_mantissa = pbit_links(
        arena,
        scratch,
        head,
        0,
        MANTISSA_BITS + 1,
        None,
        order,
        counters,
        1,
    );
    pbit_links(
        arena,
        scratch,
        by_mantissa,
        MANTISSA_BITS,
        EXPONENT_BITS,
        marker,
        order,
        counters,
        1,
    )
}

/// Sorts a chain of finite single-precision keys into numeric order.
///
/// Both field passes must tile evenly and stably, which limits the pattern
/// width to 1, 2, or 4. Equal positive keys keep their input order; the
/// reversal of the negative class flips order within runs of equal negative
/// keys.
pub fn sort_floats(
    arena: &mut NodeArena,
    list: LinkedList,
    cfg: &PbitConfig,
    counters: &mut Counters,
) -> Result<LinkedList, Error> {
    let k = cfg.pattern_width();
    for field_width in [MANTISSA_BITS + 1, EXPONENT_BITS] {
        if field_width % k != 0 {
            return Err(Error::PatternMismatch {
                bit_width: field_width,
                pattern_width: k,
            });
        }
        if (field_width / k) % 2 == 1 {
            return Err(Error::OddLevelParity {
                bit_width: field_width,
                pattern_width: k,
            });
        }
    }
    for (position, node) in arena.iter(&list).enumerate() {
        let value = f32::from_bits(arena.key(node) as u32);
        if !value.is_finite() {
            return Err(Error::NonFiniteKey { position, value });
        }
    }

    let len = list.len();
    let mut scratch = BucketScratch::new(k);
    let (negative, non_negative) = partition_by_bit(arena, list.into_head(), SIGN_BIT, counters);
    let head = match cfg.order {
        SortOrder::Ascending => {
            let non_negative = sort_magnitudes(
                arena,
                &mut scratch,
                non_negative,
                None,
                SortOrder::Ascending,
                counters,
            );
            // Ascending magnitudes are descending numbers on the negative
            // side; the reversal also splices the classes together.
            let negative = sort_magnitudes(
                arena,
                &mut scratch,
                negative,
                None,
                SortOrder::Ascending,
                counters,
            );
            reverse_onto(arena, negative, non_negative)
        }
        SortOrder::Descending => {
            let negative = sort_magnitudes(
                arena,
                &mut scratch,
                negative,
                None,
                SortOrder::Ascending,
                counters,
            );
            sort_magnitudes(
                arena,
                &mut scratch,
                non_negative,
                negative,
                SortOrder::Descending,
                counters,
            )
        }
    };
    let out = LinkedList::from_raw(head, len);
    arena.debug_check(&out);
    Ok(out)
}
