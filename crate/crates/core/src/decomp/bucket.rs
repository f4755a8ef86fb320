use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::graph::AliveMask;
use crate::VertexId;

/// Vertices bucketed by an integer key, popped in (key, id) order.
///
/// Keys are clamped to the cursor, so the cursor never moves backward.
/// Moving a vertex leaves its old entry in place; stale entries are dropped
/// when they reach the top of their bucket.
#[derive(Debug)]
pub(crate) struct BucketQueue {
    buckets: Vec<BinaryHeap<Reverse<VertexId>>>,
    key: Vec<u32>,
    cursor: u32,
}

impl BucketQueue {
    pub(crate) fn new(keys: &[u32]) -> Self {
        let top = keys.iter().copied().max().unwrap_or(0) as usize;
        let mut buckets: Vec<BinaryHeap<Reverse<VertexId>>> = Vec::with_capacity(top + 1);
        buckets.resize_with(top + 1, BinaryHeap::new);
        for (v, &k) in keys.iter().enumerate() {
            buckets[k as usize].push(Reverse(v as VertexId));
        }
        BucketQueue {
            buckets,
            key: keys.to_vec(),
            cursor: 0,
        }
    }

    pub(crate) fn cursor(&self) -> u32 {
        self.cursor
    }

    #[cfg(test)]
    pub(crate) fn key(&self, v: VertexId) -> u32 {
        self.key[v as usize]
    }

    /// Moves `v` to bucket `max(key, cursor)`. Keys may only decrease.
    pub(crate) fn lower(&mut self, v: VertexId, key: u32) {
        let key = key.max(self.cursor);
        let slot = &mut self.key[v as usize];
        debug_assert!(key <= *slot, "bucket keys only decrease");
        if key != *slot {
            *slot = key;
            self.buckets[key as usize].push(Reverse(v));
        }
    }

    /// Smallest-id alive vertex in the lowest non-empty bucket.
    pub(crate) fn pop(&mut self, alive: &AliveMask) -> Option<(u32, VertexId)> {
        while (self.cursor as usize) < self.buckets.len() {
            let k = self.cursor;
            let bucket = &mut self.buckets[k as usize];
            while let Some(&Reverse(v)) = bucket.peek() {
                bucket.pop();
                if alive.is_alive(v) && self.key[v as usize] == k {
                    return Some((k, v));
                }
            }
            self.cursor += 1;
        }
        None
    }

    /// Drains every alive vertex whose key is the lowest present key, in
    /// ascending id order. Leaves the cursor on that key.
    pub(crate) fn pop_bucket(&mut self, alive: &AliveMask, out: &mut Vec<VertexId>) -> Option<u32> {
        out.clear();
        while (self.cursor as usize) < self.buckets.len() {
            let k = self.cursor;
            let bucket = &mut self.buckets[k as usize];
            while let Some(Reverse(v)) = bucket.pop() {
                if alive.is_alive(v) && self.key[v as usize] == k && out.last() != Some(&v) {
                    out.push(v);
                }
            }
            if !out.is_empty() {
                return Some(k);
            }
            self.cursor += 1;
        }
        None
    }
}
