use std::sync::atomic::{AtomicU64, Ordering};

use super::{AliveMask, Graph};
use crate::error::{Error, Result};
use crate::VertexId;

const NO_SLOT: u32 = u32::MAX;

static NEXT_SCRATCH_ID: AtomicU64 = AtomicU64::new(0);

/// Reusable visit buffers for bounded breadth-first searches.
///
/// Visited flags are epoch stamps, so starting a new search costs O(1)
/// instead of clearing an `n`-sized array. The local index of every member of
/// the most recent neighborhood stays readable until the next search.
#[derive(Debug)]
pub struct HopScratch {
    id: u64,
    epoch: u32,
    stamp: Vec<u32>,
    slot: Vec<u32>,
    queue: Vec<(VertexId, u32)>,
}

impl HopScratch {
    pub fn new(n: usize) -> Self {
        HopScratch {
            id: NEXT_SCRATCH_ID.fetch_add(1, Ordering::Relaxed),
            epoch: 0,
            stamp: vec![0; n],
            slot: vec![NO_SLOT; n],
            queue: Vec::new(),
        }
    }

    fn next_epoch(&mut self) -> u32 {
        if self.epoch == u32::MAX {
            self.stamp.fill(0);
            self.epoch = 0;
        }
        self.epoch += 1;
        self.epoch
    }

    #[inline]
    fn visited(&self, v: VertexId) -> bool {
        self.stamp[v as usize] == self.epoch
    }

    #[inline]
    fn visit(&mut self, v: VertexId, slot: u32) {
        self.stamp[v as usize] = self.epoch;
        self.slot[v as usize] = slot;
    }

    /// Local index of `u` in the neighborhood produced by the latest search.
    #[inline]
    pub fn local_index(&self, u: VertexId) -> Option<usize> {
        if self.visited(u) && self.slot[u as usize] != NO_SLOT {
            Some(self.slot[u as usize] as usize)
        } else {
            None
        }
    }
}

/// The alive vertices within `h` hops of a source, in BFS order.
///
/// Members are grouped by non-decreasing distance, so the members within
/// distance `s` form a prefix (see [`HNeighborhood::within`]). The source
/// itself is never a member.
#[derive(Clone, Debug, Default)]
pub struct HNeighborhood {
    source: VertexId,
    hops: u32,
    members: Vec<VertexId>,
    dist: Vec<u32>,
    // layer_end[s] = number of members at distance <= s
    layer_end: Vec<usize>,
    origin: (u64, u32),
}

impl HNeighborhood {
    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn hops(&self) -> u32 {
        self.hops
    }

    /// `d_v^h` over the alive subgraph at construction time.
    pub fn degree(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[VertexId] {
        &self.members
    }

    pub fn distances(&self) -> &[u32] {
        &self.dist
    }

    pub fn distance(&self, i: usize) -> u32 {
        self.dist[i]
    }

    /// Number of members at distance at most `s`.
    pub fn count_within(&self, s: u32) -> usize {
        let s = (s as usize).min(self.hops as usize);
        self.layer_end[s]
    }

    /// Members at distance at most `s` (the set `N_v^s`).
    pub fn within(&self, s: u32) -> &[VertexId] {
        &self.members[..self.count_within(s)]
    }

    /// Local index of `u`, by linear scan. Hot paths use
    /// [`HopScratch::local_index`] instead.
    pub fn local_index(&self, u: VertexId) -> Option<usize> {
        self.members.iter().position(|&w| w == u)
    }

    /// Recomputes this neighborhood in place for source `v`.
    pub fn rebuild(
        &mut self,
        g: &Graph,
        alive: &AliveMask,
        v: VertexId,
        h: u32,
        scratch: &mut HopScratch,
    ) -> Result<()> {
        if h == 0 {
            return Err(Error::InvalidHop);
        }
        if !alive.is_alive(v) {
            return Err(Error::DeadVertex(v));
        }
        self.source = v;
        self.hops = h;
        self.members.clear();
        self.dist.clear();
        self.layer_end.clear();
        self.layer_end.resize(h as usize + 1, 0);

        let epoch = scratch.next_epoch();
        self.origin = (scratch.id, epoch);
        scratch.visit(v, NO_SLOT);

        for &w in g.neighbors(v) {
            if alive.is_alive(w) && !scratch.visited(w) {
                scratch.visit(w, self.members.len() as u32);
                self.members.push(w);
                self.dist.push(1);
            }
        }
        let mut cursor = 0usize;
        while cursor < self.members.len() && self.dist[cursor] < h {
            let x = self.members[cursor];
            let next = self.dist[cursor] + 1;
            cursor += 1;
            for &w in g.neighbors(x) {
                if alive.is_alive(w) && !scratch.visited(w) {
                    scratch.visit(w, self.members.len() as u32);
                    self.members.push(w);
                    self.dist.push(next);
                }
            }
        }

        let mut s = 0usize;
        for (i, &d) in self.dist.iter().enumerate() {
            while s < d as usize {
                self.layer_end[s] = i;
                s += 1;
            }
        }
        while s <= h as usize {
            self.layer_end[s] = self.members.len();
            s += 1;
        }
        Ok(())
    }

    fn check_origin(&self, scratch: &HopScratch) -> Result<()> {
        if self.origin != (scratch.id, scratch.epoch) {
            return Err(Error::StaleNeighborhood);
        }
        Ok(())
    }
}

/// Collects the alive vertices within `h` hops of `v` with their distances.
pub fn h_bfs(
    g: &Graph,
    alive: &AliveMask,
    v: VertexId,
    h: u32,
    scratch: &mut HopScratch,
) -> Result<HNeighborhood> {
    let mut nbh = HNeighborhood::default();
    nbh.rebuild(g, alive, v, h, scratch)?;
    Ok(nbh)
}

/// `d_v^h` over the alive subgraph, without materializing the neighborhood.
pub fn h_degree(
    g: &Graph,
    alive: &AliveMask,
    v: VertexId,
    h: u32,
    scratch: &mut HopScratch,
) -> u32 {
    h_count(g, alive, v, h, scratch, None).0
}

/// Counts the alive vertices within `h` hops of `v`, and how many of those
/// are flagged in `marked`.
pub(crate) fn h_count(
    g: &Graph,
    alive: &AliveMask,
    v: VertexId,
    h: u32,
    scratch: &mut HopScratch,
    marked: Option<&[bool]>,
) -> (u32, u32) {
    scratch.next_epoch();
    scratch.visit(v, NO_SLOT);
    let mut queue = std::mem::take(&mut scratch.queue);
    queue.clear();
    queue.push((v, 0));
    let mut head = 0;
    let mut total = 0u32;
    let mut hits = 0u32;
    while head < queue.len() {
        let (x, d) = queue[head];
        head += 1;
        if d == h {
            continue;
        }
        for &w in g.neighbors(x) {
            if alive.is_alive(w) && !scratch.visited(w) {
                scratch.visit(w, NO_SLOT);
                total += 1;
                if marked.is_some_and(|m| m[w as usize]) {
                    hits += 1;
                }
                queue.push((w, d + 1));
            }
        }
    }
    scratch.queue = queue;
    (total, hits)
}

/// Edges of the subgraph induced by the members of `nbh`, in local indices.
///
/// Each undirected edge appears once as `(i, j)` with `i < j`, ordered by `i`
/// and then by the vertex id of the far endpoint. `scratch` must be the one
/// that built `nbh`, with no search run on it since.
pub fn induced_local_subgraph(
    g: &Graph,
    alive: &AliveMask,
    nbh: &HNeighborhood,
    scratch: &HopScratch,
    out: &mut Vec<(u32, u32)>,
) -> Result<()> {
    nbh.check_origin(scratch)?;
    out.clear();
    for (i, &u) in nbh.members.iter().enumerate() {
        let i = i as u32;
        for &w in g.neighbors(u) {
            if !alive.is_alive(w) || !scratch.visited(w) {
                continue;
            }
            let j = scratch.slot[w as usize];
            if j != NO_SLOT && i < j {
                out.push((i, j));
            }
        }
    }
    Ok(())
}
