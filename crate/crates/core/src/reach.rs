//! Hop-bounded reachability inside a local induced subgraph.
//!
//! When a vertex `v` is peeled, every member `u` of `N_v^h` needs to know
//! which members close to `v` it can still reach within `h` hops once `v`
//! is gone. That set grows hop by hop: the set reachable within `s + 1`
//! hops is the union of the `s`-hop sets of `u` and its neighbors.
//!
//! [`ReachTable`] stores those sets as rows of 64-bit words and merges them
//! with bitwise or. Two banks alternate: each hop reads the bank written by
//! the previous hop and writes the other, so a bit set during a hop never
//! propagates further within the same hop. [`ReachSetTable`] is the same
//! computation over hash sets and serves as the reference for testing.

use std::collections::HashSet;

use crate::graph::HNeighborhood;

const WORD_BITS: usize = 64;

/// Word holding bit `j` (`j / 64`).
#[inline]
fn word_of(j: usize) -> usize {
    j / WORD_BITS
}

/// Mask of bit `j` within its word (`1 << (j % 64)`).
#[inline]
fn bit_of(j: usize) -> u64 {
    1u64 << (j % WORD_BITS)
}

/// Double-banked reachability bitmaps.
///
/// Rows are local vertices. Columns are the seeded vertices; a row is seeded
/// with its own column bit. Buffers grow to the largest table seen and are
/// reused across calls to [`ReachTable::reset`].
#[derive(Clone, Debug, Default)]
pub struct ReachTable {
    rows: usize,
    cols: usize,
    words: usize,
    banks: [Vec<u64>; 2],
    active: usize,
    hops_done: u32,
}

impl ReachTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Clears the table and shapes it for `rows` local vertices and `cols`
    /// seed columns.
    pub fn reset(&mut self, rows: usize, cols: usize) {
        self.rows = rows;
        self.cols = cols;
        self.words = cols.div_ceil(WORD_BITS);
        let len = rows * self.words;
        for bank in &mut self.banks {
            if bank.len() < len {
                bank.resize(len, 0);
            }
            bank[..len].fill(0);
        }
        self.active = 0;
        self.hops_done = 0;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn words_per_row(&self) -> usize {
        self.words
    }

    pub fn hops_done(&self) -> u32 {
        self.hops_done
    }

    /// Seeds `row` with column `col` in both banks.
    pub fn seed(&mut self, row: usize, col: usize) {
        debug_assert!(row < self.rows && col < self.cols);
        let at = row * self.words + word_of(col);
        let bit = bit_of(col);
        self.banks[0][at] |= bit;
        self.banks[1][at] |= bit;
    }

    /// Shapes the table for `nbh` and seeds every member closer than `h` to
    /// the source with its own index. Members at distance exactly `h` stay
    /// empty.
    ///
    /// Members are in BFS order, so the seeded members are exactly the
    /// first `|N_v^{h-1}|` rows and one column per seeded row suffices.
    pub fn seed_neighborhood(&mut self, nbh: &HNeighborhood, h: u32) {
        let seeded = nbh.count_within(h - 1);
        self.reset(nbh.degree(), seeded);
        for i in 0..seeded {
            self.seed(i, i);
        }
    }

    /// Runs `hops` rounds of the merge over the undirected local edges.
    pub fn expand(&mut self, edges: &[(u32, u32)], hops: u32) {
        let w = self.words;
        if w == 0 {
            self.hops_done += hops;
            return;
        }
        for _ in 0..hops {
            let read = self.active;
            let write = 1 - read;
            let [b0, b1] = &mut self.banks;
            let (src, dst) = if read == 0 { (&*b0, b1) } else { (&*b1, b0) };
            for &(i, j) in edges {
                let (i, j) = (i as usize * w, j as usize * w);
                for b in 0..w {
                    dst[i + b] |= src[j + b];
                    dst[j + b] |= src[i + b];
                }
            }
            self.active = write;
            self.hops_done += 1;
        }
    }

    /// Whether bit `col` of `row` is set in the most recently written bank.
    #[inline]
    pub fn reaches(&self, row: usize, col: usize) -> bool {
        self.banks[self.active][row * self.words + word_of(col)] & bit_of(col) != 0
    }

    /// Words of `row` in the most recently written bank.
    pub fn row(&self, row: usize) -> &[u64] {
        let start = row * self.words;
        &self.banks[self.active][start..start + self.words]
    }
}

/// Hash-set version of [`ReachTable`] with identical semantics.
#[derive(Clone, Debug, Default)]
pub struct ReachSetTable {
    banks: [Vec<HashSet<u32>>; 2],
    active: usize,
}

impl ReachSetTable {
    pub fn new(rows: usize) -> Self {
        ReachSetTable {
            banks: [vec![HashSet::new(); rows], vec![HashSet::new(); rows]],
            active: 0,
        }
    }

    pub fn seed(&mut self, row: usize, col: u32) {
        self.banks[0][row].insert(col);
        self.banks[1][row].insert(col);
    }

    pub fn seed_neighborhood(nbh: &HNeighborhood, h: u32) -> Self {
        let mut table = Self::new(nbh.degree());
        for i in 0..nbh.count_within(h - 1) {
            table.seed(i, i as u32);
        }
        table
    }

    pub fn expand(&mut self, edges: &[(u32, u32)], hops: u32) {
        for _ in 0..hops {
            let read = self.active;
            let [b0, b1] = &mut self.banks;
            let (src, dst) = if read == 0 { (&*b0, b1) } else { (&*b1, b0) };
            for &(i, j) in edges {
                let (i, j) = (i as usize, j as usize);
                dst[i].extend(src[j].iter().copied());
                dst[j].extend(src[i].iter().copied());
            }
            self.active = 1 - read;
        }
    }

    pub fn reaches(&self, row: usize, col: u32) -> bool {
        self.banks[self.active][row].contains(&col)
    }

    pub fn row(&self, row: usize) -> &HashSet<u32> {
        &self.banks[self.active][row]
    }
}
