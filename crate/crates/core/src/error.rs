use thiserror::Error;

/// Errors reported by list construction, configuration, and the sorters.
///
/// Configuration problems are always reported before any list is mutated, so
/// a failed call leaves its inputs exactly as they were.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The node store could not reserve memory for a new node.
    #[error("node allocation failed")]
    AllocationFailed,

    /// The node store is full (node handles are 32-bit).
    #[error("arena capacity exceeded")]
    CapacityExceeded,

    /// Key widths are limited to the machine-word sizes the sorters handle.
    #[error("key width {0} is not one of 8, 16, 32, 64")]
    InvalidBitWidth(u32),

    /// Bucket pattern widths must divide every supported key width evenly.
    #[error("pattern width {0} is not one of 1, 2, 4, 8, 16")]
    InvalidPatternWidth(u32),

    /// The pattern width does not divide the number of key bits to sort on.
    #[error("pattern width {pattern_width} does not divide key width {bit_width}")]
    PatternMismatch { bit_width: u32, pattern_width: u32 },

    /// Stable output needs an even number of split levels; each level
    /// reverses the relative order of equal keys once.
    #[error(
        "stable sort needs an even number of split levels, \
         but {bit_width}/{pattern_width} is odd"
    )]
    OddLevelParity { bit_width: u32, pattern_width: u32 },

    /// A key value does not fit the descriptor it was presented under.
    #[error("key {key} does not fit in {bit_width} {signedness} bits")]
    KeyOutOfRange {
        key: i64,
        bit_width: u32,
        signedness: &'static str,
    },

    /// A float value with no place on the number line (scalar operations).
    #[error("value {0} is not finite")]
    NonFiniteValue(f32),

    /// A float sort found a NaN or infinity; nothing was reordered.
    #[error("non-finite key {value} at list position {position}")]
    NonFiniteKey { position: usize, value: f32 },
}
