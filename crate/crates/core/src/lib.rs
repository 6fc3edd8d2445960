//! A laboratory for sorting singly-linked lists without comparing keys.
//!
//! The centerpiece is [`pbit::sort`]: a most-significant-bits-first bucket
//! sort that walks the key's bit pattern a fixed-width slice at a time,
//! relinking nodes into `2^K` buckets per level and recursing until the
//! pattern is exhausted. Nodes are never copied and keys are never compared;
//! the total relink work is `n * (M / K)` for `M`-bit keys taken `K` bits at
//! a stride, plus one visit per node to splice the deepest buckets back
//! together.
//!
//! Around it:
//!
//! * [`list`] — an arena-backed singly-linked list with O(1) relinks,
//!   cycle-safe validation, and stable node identities for payload tracking.
//! * [`pbit`] — the bucket sorter, its configuration ([`PbitConfig`],
//!   [`KeyDescriptor`]), and the raw recursion for callers that want to
//!   thread their own end markers.
//! * [`float`] — the same machinery applied to `f32` keys via sign
//!   partitioning and per-field passes over mantissa and exponent bits.
//! * [`baselines`] — comparison sorters (quickersort, mergesort, two
//!   partition sorts) and a standard-library oracle to measure against.
//! * [`metrics`] — operation counters and the closed-form cost and memory
//!   models the counters are checked against.
//!
//! ```
//! use listsort_core::{pbit, Counters, KeyDescriptor, NodeArena, PbitConfig, SortOrder};
//!
//! let mut arena = NodeArena::new();
//! let list = arena.from_sequence(&[209, 3, 156, 47]).unwrap();
//! let kd = KeyDescriptor::new(8, false).unwrap();
//! let cfg = PbitConfig::new(4, SortOrder::Ascending).unwrap();
//! let mut counters = Counters::new();
//! let sorted = pbit::sort(&mut arena, list, &kd, &cfg, &mut counters).unwrap();
//! assert_eq!(arena.to_sequence(&sorted), [3, 47, 156, 209]);
//! if cfg!(feature = "counters") {
//!     assert_eq!(counters.relink_count, 4 * (8 / 4));
//!     assert_eq!(counters.merge_visit_count, 4);
//! }
//! ```
//!
//! Counter bookkeeping compiles away when the default `counters` feature is
//! disabled; every sorter produces identical output either way.

pub mod baselines;
pub mod error;
pub mod float;
pub mod list;
pub mod metrics;
pub mod pbit;

pub use error::Error;
pub use list::{Link, LinkedList, NodeArena, NodeRef, Validation};
pub use metrics::{coefficient, predicted_ops, Counters, MemoryModel};
pub use pbit::{extract_bits, KeyDescriptor, PbitConfig, SortOrder};
