//! Undirected simple graphs in compressed adjacency form.
//!
//! A [`Graph`] is immutable once built. Vertex deletions during peeling are
//! logical: an [`AliveMask`] flags the vertices that still exist, and every
//! traversal skips the dead ones.

mod bfs;
mod generate;
mod load;

use std::collections::HashMap;

pub(crate) use bfs::h_count;
pub use bfs::{h_bfs, h_degree, induced_local_subgraph, HNeighborhood, HopScratch};
pub use generate::gnp;
pub use load::{load_edge_list, LoadOptions};

use crate::VertexId;

/// An undirected simple graph with dense vertex ids `0..n`.
///
/// Every neighbor slice is sorted ascending and free of self-loops and
/// duplicates. The original label of each vertex is retained so results can
/// be written back in terms of the input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
    labels: Vec<u64>,
    id_map: HashMap<u64, VertexId>,
}

impl Graph {
    /// Builds a graph on `n` vertices labelled `0..n`.
    ///
    /// Self-loops and repeated edges are dropped and direction is ignored.
    ///
    /// # Panics
    ///
    /// Panics if an endpoint is `>= n`.
    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        Self::with_labels((0..n as u64).collect(), edges)
    }

    pub(crate) fn with_labels<I>(labels: Vec<u64>, edges: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let n = labels.len();
        let mut arcs: Vec<(VertexId, VertexId)> = Vec::new();
        for (u, v) in edges {
            assert!(
                (u as usize) < n && (v as usize) < n,
                "edge ({u}, {v}) out of range for {n} vertices"
            );
            if u != v {
                arcs.push((u, v));
                arcs.push((v, u));
            }
        }
        arcs.sort_unstable();
        arcs.dedup();

        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in &arcs {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let neighbors = arcs.into_iter().map(|(_, v)| v).collect();
        let id_map = labels
            .iter()
            .enumerate()
            .map(|(id, &label)| (label, id as VertexId))
            .collect();

        Graph {
            offsets,
            neighbors,
            labels,
            id_map,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Label the vertex carried in the input.
    pub fn label(&self, v: VertexId) -> u64 {
        self.labels[v as usize]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Dense id of an input label, if present.
    pub fn dense_id(&self, label: u64) -> Option<VertexId> {
        self.id_map.get(&label).copied()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.vertex_count() as VertexId
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }
}

/// Alive flags for logical vertex deletion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AliveMask {
    alive: Vec<bool>,
    alive_count: usize,
}

impl AliveMask {
    pub fn all(n: usize) -> Self {
        AliveMask {
            alive: vec![true; n],
            alive_count: n,
        }
    }

    /// Mask with exactly the given vertices alive.
    pub fn from_members(n: usize, members: impl IntoIterator<Item = VertexId>) -> Self {
        let mut mask = AliveMask {
            alive: vec![false; n],
            alive_count: 0,
        };
        for v in members {
            mask.revive(v);
        }
        mask
    }

    #[inline]
    pub fn is_alive(&self, v: VertexId) -> bool {
        self.alive[v as usize]
    }

    pub fn alive_count(&self) -> usize {
        self.alive_count
    }

    pub fn len(&self) -> usize {
        self.alive.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alive.is_empty()
    }

    /// Marks `v` dead. Returns whether it was alive.
    pub fn remove(&mut self, v: VertexId) -> bool {
        let slot = &mut self.alive[v as usize];
        let was = *slot;
        if was {
            *slot = false;
            self.alive_count -= 1;
        }
        was
    }

    /// Marks `v` alive. Returns whether it was dead.
    pub fn revive(&mut self, v: VertexId) -> bool {
        let slot = &mut self.alive[v as usize];
        let was_dead = !*slot;
        if was_dead {
            *slot = true;
            self.alive_count += 1;
        }
        was_dead
    }

    pub fn iter_alive(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(v, _)| v as VertexId)
    }
}
