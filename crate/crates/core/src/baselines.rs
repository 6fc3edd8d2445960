//! Comparison-based list sorters the bucket sorter is measured against, plus
//! the ground-truth oracle.
//!
//! * [`quickersort`] — one pivot, three-way partition, tails threaded back
//!   through return values so nothing is ever re-walked.
//! * [`mergesort`] — recursive halving with an iterative, stable merge.
//! * [`psort`] — two pivots taken from the first two nodes, three-way
//!   partition, sublists chained through an end marker.
//! * [`psort2`] — `psort` plus capture lists for keys equal to either pivot,
//!   which collapses duplicate-heavy inputs to a single partition level.
//! * [`oracle_sort`] — copies the keys out, stable-sorts them with the
//!   standard library, and rebuilds a fresh chain. Slow and allocation-happy
//!   on purpose: it exists to check the others.
//!
//! The partition sorters can nest one level per node on adversarial input,
//! so above [`RECURSIVE_LEN_LIMIT`] they switch from call-stack recursion to
//! an explicit work stack that visits segments in the same order and
//! produces the identical chain.

use crate::error::Error;
use crate::list::{Link, LinkedList, NodeArena, NodeRef};
use crate::metrics::Counters;
use crate::pbit::KeyDescriptor;
use std::cmp::Ordering;

/// Longest input the partition sorters handle with genuine recursion;
/// anything longer runs on an explicit work stack.
pub const RECURSIVE_LEN_LIMIT: usize = 100_000;

struct QsParts {
    greater: Link,
    /// Keys equal to the pivot, chained so the pivot node is the tail.
    equal_head: NodeRef,
    less: Link,
}

fn qs_partition(
    arena: &mut NodeArena,
    pivot: NodeRef,
    kd: &KeyDescriptor,
    counters: &mut Counters,
) -> QsParts {
    let mut rest = arena.take_next(pivot);
    let pivot_key = arena.key(pivot);
    let mut parts = QsParts {
        greater: None,
        equal_head: pivot,
        less: None,
    };
    while let Some(node) = rest {
        rest = arena.take_next(node);
        let node_key = arena.key(node);
        counters.record_comparison();
        if kd.compare(pivot_key, node_key) == Ordering::Less {
            arena.set_next(node, parts.greater);
            parts.greater = Some(node);
        } else {
            counters.record_comparison();
            if kd.compare(pivot_key, node_key) == Ordering::Equal {
                arena.set_next(node, Some(parts.equal_head));
                parts.equal_head = node;
            } else {
                arena.set_next(node, parts.less);
                parts.less = Some(node);
            }
        }
    }
    parts
}

fn qs_rec(
    arena: &mut NodeArena,
    head: Link,
    kd: &KeyDescriptor,
    counters: &mut Counters,
    depth: u64,
) -> (Link, Link) {
    let Some(first) = head else { return (None, None) };
    if arena.next(first).is_none() {
        return (head, head);
    }
    counters.note_depth(depth);
    let parts = qs_partition(arena, first, kd, counters);
    let (less_head, less_tail) = qs_rec(arena, parts.less, kd, counters, depth + 1);
    let (greater_head, greater_tail) = qs_rec(arena, parts.greater, kd, counters, depth + 1);
    if let Some(tail) = less_tail {
        arena.set_next(tail, Some(parts.equal_head));
    }
    arena.set_next(first, greater_head);
    (
        less_head.or(Some(parts.equal_head)),
        greater_tail.or(Some(first)),
    )
}

enum Segment {
    Sort(Link, u64),
    /// An already-ordered chain from `head` to `tail`, ready to emit.
    Chain(NodeRef, NodeRef),
}

fn qs_stack(
    arena: &mut NodeArena,
    head: Link,
    kd: &KeyDescriptor,
    counters: &mut Counters,
) -> (Link, Link) {
    let mut out_head: Link = None;
    let mut out_tail: Link = None;
    let mut stack = vec![Segment::Sort(head, 1)];
    while let Some(segment) = stack.pop() {
        let (chain_head, chain_tail) = match segment {
            Segment::Chain(h, t) => (h, t),
            Segment::Sort(None, _) => continue,
            Segment::Sort(Some(first), depth) => {
                if arena.next(first).is_none() {
                    (first, first)
                } else {
                    counters.note_depth(depth);
                    let parts = qs_partition(arena, first, kd, counters);
                    // Popped in sorted order: less, equals, greater.
                    stack.push(Segment::Sort(parts.greater, depth + 1));
                    stack.push(Segment::Chain(parts.equal_head, first));
                    stack.push(Segment::Sort(parts.less, depth + 1));
                    continue;
                }
            }
        };
        match out_tail {
            Some(tail) => arena.set_next(tail, Some(chain_head)),
            None => out_head = Some(chain_head),
        }
        out_tail = Some(chain_tail);
    }
    (out_head, out_tail)
}

/// One-pivot three-way partition sort, ascending. Not stable: partitioning
/// prepends, which reverses equal-key runs unpredictably.
pub fn quickersort(
    arena: &mut NodeArena,
    list: LinkedList,
    kd: &KeyDescriptor,
    counters: &mut Counters,
) -> LinkedList {
    let len = list.len();
    let head = list.into_head();
    let (sorted, _tail) = if len <= RECURSIVE_LEN_LIMIT {
        qs_rec(arena, head, kd, counters, 1)
    } else {
        qs_stack(arena, head, kd, counters)
    };
    let out = LinkedList::from_raw(sorted, len);
    arena.debug_check(&out);
    out
}

fn ms_merge(
    arena: &mut NodeArena,
    a: Link,
    b: Link,
    kd: &KeyDescriptor,
    counters: &mut Counters,
) -> Link {
    let Some(a_head) = a else { return b };
    let Some(b_head) = b else { return a };
    let mut a_cur = Some(a_head);
    let mut b_cur = Some(b_head);
    let mut head: Link = None;
    let mut last: Link = None;
    while let (Some(x), Some(y)) = (a_cur, b_cur) {
        counters.record_comparison();
        // Ties take from `a`, the earlier half, which is what keeps the sort
        // stable.
        let node = if kd.compare(arena.key(x), arena.key(y)) != Ordering::Greater {
            a_cur = arena.next(x);
            x
        } else {
            b_cur = arena.next(y);
            y
        };
        match last {
            Some(l) => arena.set_next(l, Some(node)),
            None => head = Some(node),
        }
        last = Some(node);
    }
    arena.set_next(last.expect("loop ran at least once"), a_cur.or(b_cur));
    head
}

fn ms_rec(
    arena: &mut NodeArena,
    head: Link,
    len: usize,
    kd: &KeyDescriptor,
    counters: &mut Counters,
    depth: u64,
) -> Link {
    if len < 2 {
        return head;
    }
    counters.note_depth(depth);
    let front_len = len / 2;
    let mut cut = head.expect("len >= 2");
    for _ in 1..front_len {
        cut = arena.next(cut).expect("front half lies within the chain");
    }
    let back = arena.take_next(cut);
    let a = ms_rec(arena, head, front_len, kd, counters, depth + 1);
    let b = ms_rec(arena, back, len - front_len, kd, counters, depth + 1);
    ms_merge(arena, a, b, kd, counters)
}

/// Stable ascending merge sort: split into contiguous halves, sort each,
/// merge iteratively. Recursion depth is logarithmic, so no work-stack
/// variant is needed.
pub fn mergesort(
    arena: &mut NodeArena,
    list: LinkedList,
    kd: &KeyDescriptor,
    counters: &mut Counters,
) -> LinkedList {
    let len = list.len();
    let head = ms_rec(arena, list.into_head(), len, kd, counters, 1);
    let out = LinkedList::from_raw(head, len);
    arena.debug_check(&out);
    out
}

struct PsParts {
    small: NodeRef,
    big: NodeRef,
    /// Keys equal to the small pivot; the chain's tail is `small` itself.
    equal_small_head: NodeRef,
    /// Keys equal to the big pivot; the chain's tail is `big` itself.
    equal_big_head: NodeRef,
    less: Link,
    between: Link,
    greater: Link,
}

fn ps_partition<const CAPTURE: bool>(
    arena: &mut NodeArena,
    first: NodeRef,
    second: NodeRef,
    kd: &KeyDescriptor,
    counters: &mut Counters,
) -> PsParts {
    let mut rest = arena.take_next(second);
    arena.set_next(first, None);
    counters.record_comparison();
    let (small, big) = if kd.compare(arena.key(first), arena.key(second)) == Ordering::Greater {
        (second, first)
    } else {
        (first, second)
    };
    let small_key = arena.key(small);
    let big_key = arena.key(big);
    let mut parts = PsParts {
        small,
        big,
        equal_small_head: small,
        equal_big_head: big,
        less: None,
        between: None,
        greater: None,
    };
    while let Some(node) = rest {
        rest = arena.take_next(node);
        let node_key = arena.key(node);
        counters.record_comparison();
        if kd.compare(node_key, small_key) == Ordering::Less {
            arena.set_next(node, parts.less);
            parts.less = Some(node);
            continue;
        }
        counters.record_comparison();
        if kd.compare(node_key, big_key) == Ordering::Greater {
            arena.set_next(node, parts.greater);
            parts.greater = Some(node);
            continue;
        }
        if CAPTURE {
            counters.record_comparison();
            if kd.compare(node_key, small_key) == Ordering::Equal {
                arena.set_next(node, Some(parts.equal_small_head));
                parts.equal_small_head = node;
                continue;
            }
            counters.record_comparison();
            if kd.compare(node_key, big_key) == Ordering::Equal {
                arena.set_next(node, Some(parts.equal_big_head));
                parts.equal_big_head = node;
                continue;
            }
        }
        arena.set_next(node, parts.between);
        parts.between = Some(node);
    }
    parts
}

fn ps_rec<const CAPTURE: bool>(
    arena: &mut NodeArena,
    head: Link,
    marker: Link,
    kd: &KeyDescriptor,
    counters: &mut Counters,
    depth: u64,
) -> Link {
    let Some(first) = head else { return marker };
    let Some(second) = arena.next(first) else {
        arena.set_next(first, marker);
        return head;
    };
    counters.note_depth(depth);
    let parts = ps_partition::<CAPTURE>(arena, first, second, kd, counters);
    let greater = ps_rec::<CAPTURE>(arena, parts.greater, marker, kd, counters, depth + 1);
    arena.set_next(parts.big, greater);
    let between = ps_rec::<CAPTURE>(
        arena,
        parts.between,
        Some(parts.equal_big_head),
        kd,
        counters,
        depth + 1,
    );
    arena.set_next(parts.small, between);
    ps_rec::<CAPTURE>(
        arena,
        parts.less,
        Some(parts.equal_small_head),
        kd,
        counters,
        depth + 1,
    )
}

fn ps_stack<const CAPTURE: bool>(
    arena: &mut NodeArena,
    head: Link,
    marker: Link,
    kd: &KeyDescriptor,
    counters: &mut Counters,
) -> Link {
    let mut acc = marker;
    let mut stack = vec![Segment::Sort(head, 1)];
    while let Some(segment) = stack.pop() {
        match segment {
            Segment::Chain(h, t) => {
                arena.set_next(t, acc);
                acc = Some(h);
            }
            Segment::Sort(None, _) => {}
            Segment::Sort(Some(first), depth) => match arena.next(first) {
                None => {
                    arena.set_next(first, acc);
                    acc = Some(first);
                }
                Some(second) => {
                    counters.note_depth(depth);
                    let parts = ps_partition::<CAPTURE>(arena, first, second, kd, counters);
                    // The accumulator grows from the tail, so the rightmost
                    // segment is pushed last-popped-first... pushed first.
                    stack.push(Segment::Sort(parts.less, depth + 1));
                    stack.push(Segment::Chain(parts.equal_small_head, parts.small));
                    stack.push(Segment::Sort(parts.between, depth + 1));
                    stack.push(Segment::Chain(parts.equal_big_head, parts.big));
                    stack.push(Segment::Sort(parts.greater, depth + 1));
                }
            },
        }
    }
    acc
}

fn ps_public<const CAPTURE: bool>(
    arena: &mut NodeArena,
    list: LinkedList,
    marker: LinkedList,
    kd: &KeyDescriptor,
    counters: &mut Counters,
) -> LinkedList {
    let n = list.len();
    let len = n + marker.len();
    let (head, marker_head) = (list.into_head(), marker.into_head());
    let sorted = if n <= RECURSIVE_LEN_LIMIT {
        ps_rec::<CAPTURE>(arena, head, marker_head, kd, counters, 1)
    } else {
        ps_stack::<CAPTURE>(arena, head, marker_head, kd, counters)
    };
    let out = LinkedList::from_raw(sorted, len);
    arena.debug_check(&out);
    out
}

/// Two-pivot three-way partition sort, ascending, with the already-sorted
/// `marker` spliced after everything emitted. Not stable.
pub fn psort(
    arena: &mut NodeArena,
    list: LinkedList,
    marker: LinkedList,
    kd: &KeyDescriptor,
    counters: &mut Counters,
) -> LinkedList {
    ps_public::<false>(arena, list, marker, kd, counters)
}

/// [`psort`] with capture lists for keys equal to either pivot, so runs of
/// duplicates never re-enter the recursion. Not stable.
pub fn psort2(
    arena: &mut NodeArena,
    list: LinkedList,
    marker: LinkedList,
    kd: &KeyDescriptor,
    counters: &mut Counters,
) -> LinkedList {
    ps_public::<true>(arena, list, marker, kd, counters)
}

/// Ground truth: extracts `(key, payload)` pairs, stable-sorts them with the
/// standard library, and builds a brand-new chain. The input chain is left
/// untouched.
pub fn oracle_sort(
    arena: &mut NodeArena,
    list: &LinkedList,
    kd: &KeyDescriptor,
) -> Result<LinkedList, Error> {
    let mut pairs = arena.to_pairs(list);
    pairs.sort_by(|a, b| kd.compare(a.0, b.0));
    let mut out = LinkedList::empty();
    for &(key, payload) in pairs.iter().rev() {
        arena.push(&mut out, key, payload)?;
    }
    Ok(out)
}
