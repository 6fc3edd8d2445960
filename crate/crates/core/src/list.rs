//! Arena-backed singly-linked lists.
//!
//! Nodes live in a [`NodeArena`] and point at each other with 32-bit handles,
//! so relinking a node is a single slot write and sorting never allocates or
//! frees nodes. A [`LinkedList`] is just a head handle plus a length; it is
//! deliberately not `Clone`, because every node belongs to exactly one chain
//! at a time and the sorters consume their input list by value.
//!
//! Each node carries a key (an `M`-bit pattern stored in a `u64`), an opaque
//! payload tag that the sorters never touch (handy for checking stability),
//! and an optional `back` link to its predecessor. The sorters maintain only
//! the forward links; after sorting a doubly-linked chain, one
//! [`NodeArena::repair_back_links`] pass makes the back links consistent
//! again.

use crate::error::Error;
use crate::metrics::Counters;
use std::num::NonZeroU32;

/// Handle to a node in a [`NodeArena`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeRef(NonZeroU32);

/// A forward or back pointer: either a node handle or the end of the chain.
pub type Link = Option<NodeRef>;

impl NodeRef {
    fn from_index(index: usize) -> Self {
        let raw = u32::try_from(index + 1).expect("arena index fits in u32");
        Self(NonZeroU32::new(raw).unwrap())
    }

    fn index(self) -> usize {
        self.0.get() as usize - 1
    }
}

#[derive(Debug)]
struct Node {
    key: u64,
    payload: u64,
    next: Link,
    back: Link,
}

/// Owns every node; all list operations go through it.
#[derive(Debug, Default)]
pub struct NodeArena {
    nodes: Vec<Node>,
}

/// A chain of nodes inside some arena: head handle plus node count.
#[derive(Debug, Default)]
#[must_use]
pub struct LinkedList {
    head: Link,
    len: usize,
}

/// Outcome of a structural check on a chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Validation {
    Ok,
    /// Following `next` revisits a node, so the walk would never end.
    CycleDetected,
    /// The chain is acyclic but longer than the permitted bound.
    Overlong,
}

impl LinkedList {
    pub fn empty() -> Self {
        Self::default()
    }

    pub(crate) fn from_raw(head: Link, len: usize) -> Self {
        Self { head, len }
    }

    pub fn head(&self) -> Link {
        self.head
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.head.is_none()
    }

    /// Gives up ownership of the chain, returning its head.
    pub(crate) fn into_head(self) -> Link {
        self.head
    }
}

impl NodeArena {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(nodes: usize) -> Self {
        Self {
            nodes: Vec::with_capacity(nodes),
        }
    }

    /// Total nodes ever allocated in this arena.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn key(&self, node: NodeRef) -> u64 {
        self.nodes[node.index()].key
    }

    pub fn payload(&self, node: NodeRef) -> u64 {
        self.nodes[node.index()].payload
    }

    pub fn next(&self, node: NodeRef) -> Link {
        self.nodes[node.index()].next
    }

    pub fn back(&self, node: NodeRef) -> Link {
        self.nodes[node.index()].back
    }

    /// Overwrites a node's key in place. The list sorters never do this; it
    /// exists for the array-copy baseline, which is not a list algorithm.
    pub fn set_key(&mut self, node: NodeRef, key: u64) {
        self.nodes[node.index()].key = key;
    }

    #[inline]
    pub(crate) fn set_next(&mut self, node: NodeRef, next: Link) {
        self.nodes[node.index()].next = next;
    }

    #[inline]
    pub(crate) fn take_next(&mut self, node: NodeRef) -> Link {
        self.nodes[node.index()].next.take()
    }

    pub(crate) fn set_back(&mut self, node: NodeRef, back: Link) {
        self.nodes[node.index()].back = back;
    }

    fn alloc(&mut self, key: u64, payload: u64) -> Result<NodeRef, Error> {
        if self.nodes.len() >= u32::MAX as usize - 1 {
            return Err(Error::CapacityExceeded);
        }
        self.nodes
            .try_reserve(1)
            .map_err(|_| Error::AllocationFailed)?;
        let node = NodeRef::from_index(self.nodes.len());
        self.nodes.push(Node {
            key,
            payload,
            next: None,
            back: None,
        });
        Ok(node)
    }

    /// Prepends a new node, so the most recently pushed key is at the head:
    /// pushing 1, 2, 3 onto an empty list yields the key sequence `[3, 2, 1]`.
    pub fn push(
        &mut self,
        list: &mut LinkedList,
        key: u64,
        payload: u64,
    ) -> Result<NodeRef, Error> {
        let node = self.alloc(key, payload)?;
        self.set_next(node, list.head);
        list.head = Some(node);
        list.len += 1;
        Ok(node)
    }

    /// Splices `b` onto the tail of `a` by walking `a` to its end: exactly
    /// `a.len()` node visits, no new nodes. There is deliberately no
    /// emptiness check on `b` — splicing an empty `b` costs the same walk.
    pub fn merge(&mut self, a: LinkedList, b: LinkedList, counters: &mut Counters) -> LinkedList {
        let len = a.len + b.len;
        let head = self.merge_links(a.head, b.head, counters);
        let out = LinkedList::from_raw(head, len);
        self.debug_check(&out);
        out
    }

    /// Link-level merge shared with the sorters.
    pub(crate) fn merge_links(&mut self, a: Link, b: Link, counters: &mut Counters) -> Link {
        let Some(head) = a else { return b };
        counters.record_merge_visit();
        let mut tail = head;
        while let Some(next) = self.next(tail) {
            tail = next;
            counters.record_merge_visit();
        }
        self.set_next(tail, b);
        a
    }

    /// Builds a chain with the same key order as `keys`; each node's payload
    /// is its position, so `to_sequence` returns `keys` verbatim and equal
    /// keys stay distinguishable.
    pub fn from_sequence(&mut self, keys: &[u64]) -> Result<LinkedList, Error> {
        let mut list = LinkedList::empty();
        for (position, &key) in keys.iter().enumerate().rev() {
            self.push(&mut list, key, position as u64)?;
        }
        self.debug_check(&list);
        Ok(list)
    }

    /// Keys in chain order.
    pub fn to_sequence(&self, list: &LinkedList) -> Vec<u64> {
        self.iter(list).map(|n| self.key(n)).collect()
    }

    /// `(key, payload)` pairs in chain order.
    pub fn to_pairs(&self, list: &LinkedList) -> Vec<(u64, u64)> {
        self.iter(list).map(|n| (self.key(n), self.payload(n))).collect()
    }

    /// Walks the chain from its head.
    pub fn iter<'a>(&'a self, list: &LinkedList) -> Iter<'a> {
        Iter {
            arena: self,
            cursor: list.head,
        }
    }

    pub(crate) fn chain_len(&self, head: Link) -> usize {
        let mut len = 0;
        let mut cursor = head;
        while let Some(node) = cursor {
            len += 1;
            cursor = self.next(node);
        }
        len
    }

    /// Structural check: detects cycles with a two-speed walk, then bounds
    /// the length. A cyclic chain reports `CycleDetected` regardless of the
    /// bound, since its length is not even defined.
    pub fn validate(&self, list: &LinkedList, max_nodes: usize) -> Validation {
        let mut slow = list.head;
        let mut fast = list.head;
        while let Some(f1) = fast {
            let Some(f2) = self.next(f1) else { break };
            fast = self.next(f2);
            slow = self.next(slow.expect("slow trails fast"));
            if slow == fast {
                return Validation::CycleDetected;
            }
        }
        if self.chain_len(list.head) > max_nodes {
            Validation::Overlong
        } else {
            Validation::Ok
        }
    }

    /// Rewrites every `back` link so that `back(successor(x)) == x` and the
    /// head's back link is empty. Forward order is untouched.
    pub fn repair_back_links(&mut self, list: &LinkedList) {
        let mut prev: Link = None;
        let mut cursor = list.head;
        while let Some(node) = cursor {
            self.set_back(node, prev);
            prev = cursor;
            cursor = self.next(node);
        }
    }

    /// Debug-build guard run after chain-producing operations: the result
    /// must be acyclic and its recorded length exact.
    #[cfg(debug_assertions)]
    pub(crate) fn debug_check(&self, list: &LinkedList) {
        assert_eq!(
            self.validate(list, list.len),
            Validation::Ok,
            "produced chain must be acyclic and no longer than its recorded length"
        );
        assert_eq!(
            self.chain_len(list.head),
            list.len,
            "recorded length must match the chain"
        );
    }

    #[cfg(not(debug_assertions))]
    #[inline]
    pub(crate) fn debug_check(&self, _list: &LinkedList) {}
}

/// Forward traversal of one chain.
pub struct Iter<'a> {
    arena: &'a NodeArena,
    cursor: Link,
}

impl Iterator for Iter<'_> {
    type Item = NodeRef;

    fn next(&mut self) -> Option<NodeRef> {
        let node = self.cursor?;
        self.cursor = self.arena.next(node);
        Some(node)
    }
}
