//! Exact (k,h)-core decomposition by peeling.
//!
//! Every driver repeatedly deletes a vertex of minimum h-degree and assigns
//! it the running minimum `k`. They differ in how the h-degrees of the
//! deleted vertex's neighborhood are brought up to date:
//!
//! * [`peel_baseline`] recomputes each affected h-degree with a fresh
//!   bounded BFS.
//! * [`peel_khcore`] derives the exact drop of each affected h-degree from
//!   hop-bounded reachability inside the subgraph induced by the deleted
//!   vertex's h-neighborhood, using either hash sets or bitmaps.

mod binsort;
mod bucket;
mod update;

use std::fmt;
use std::time::{Duration, Instant};

pub use binsort::classic_core_numbers;
pub(crate) use bucket::BucketQueue;
pub use update::{bitmap_update, update_nbr, UpdateEntry, UpdateOutcome};
pub(crate) use update::{reached_prefix, Workspace};

use crate::error::{Error, Result};
use crate::graph::{h_degree, AliveMask, Graph, HopScratch};
use crate::VertexId;

/// How the h-degree update after a deletion is represented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UpdateVariant {
    /// Reach sets as hash sets.
    SetBased,
    /// Reach sets as 64-bit word bitmaps.
    Bitmap,
}

/// Which procedure produced a [`CoreResult`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Algorithm {
    Baseline,
    KhCore(UpdateVariant),
    Sample { rate: f64, seed: u64 },
    ClassicBinSort,
    BruteForce,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Baseline => f.write_str("baseline"),
            Algorithm::KhCore(UpdateVariant::SetBased) => f.write_str("khcore"),
            Algorithm::KhCore(UpdateVariant::Bitmap) => f.write_str("khcore-bitmap"),
            Algorithm::Sample { .. } => f.write_str("sample"),
            Algorithm::ClassicBinSort => f.write_str("binsort"),
            Algorithm::BruteForce => f.write_str("brute-force"),
        }
    }
}

/// Core numbers of one decomposition run.
#[derive(Clone, Debug)]
pub struct CoreResult {
    pub h: u32,
    pub algorithm: Algorithm,
    pub core: Vec<u32>,
    pub k_max: u32,
    pub elapsed: Duration,
}

impl CoreResult {
    pub fn new(h: u32, algorithm: Algorithm, core: Vec<u32>, elapsed: Duration) -> Self {
        let k_max = core.iter().copied().max().unwrap_or(0);
        CoreResult {
            h,
            algorithm,
            core,
            k_max,
            elapsed,
        }
    }

    /// Vertices of the (k,h)-core: those with core number at least `k`.
    pub fn extract_core(&self, k: u32) -> Vec<VertexId> {
        self.core
            .iter()
            .enumerate()
            .filter(|(_, &c)| c >= k)
            .map(|(v, _)| v as VertexId)
            .collect()
    }
}

/// Whether every vertex of `vertices` has at least `k` others within `h`
/// hops inside the subgraph they induce.
pub fn validate_core(g: &Graph, h: u32, vertices: &[VertexId], k: u32) -> bool {
    let alive = AliveMask::from_members(g.vertex_count(), vertices.iter().copied());
    let mut scratch = HopScratch::new(g.vertex_count());
    vertices
        .iter()
        .all(|&v| h_degree(g, &alive, v, h, &mut scratch) >= k)
}

/// Initial h-degree of every vertex.
pub fn initial_h_degrees(g: &Graph, h: u32) -> Result<Vec<u32>> {
    if h == 0 {
        return Err(Error::InvalidHop);
    }
    let alive = AliveMask::all(g.vertex_count());
    let mut scratch = HopScratch::new(g.vertex_count());
    Ok(g.vertices()
        .map(|v| h_degree(g, &alive, v, h, &mut scratch))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Updater {
    Recompute,
    Local(UpdateVariant),
}

/// One deletion performed by [`PeelState::step`].
#[derive(Clone, Debug)]
pub struct PeelStep {
    pub vertex: VertexId,
    pub k: u32,
    pub outcome: UpdateOutcome,
    /// Neighbors whose updated h-degree fell to `k` or below, i.e. that
    /// joined the current bucket.
    pub joined: Vec<VertexId>,
}

/// Mutable state of a sequential peeling run.
pub struct PeelState<'g> {
    g: &'g Graph,
    h: u32,
    updater: Updater,
    hdeg: Vec<u32>,
    alive: AliveMask,
    core: Vec<u32>,
    queue: BucketQueue,
    ws: Workspace,
}

impl<'g> PeelState<'g> {
    /// Peeling state using the local update of the given variant.
    pub fn new(g: &'g Graph, h: u32, variant: UpdateVariant) -> Result<Self> {
        Self::build(g, h, Updater::Local(variant))
    }

    /// Peeling state that recomputes affected h-degrees by BFS.
    pub fn recomputing(g: &'g Graph, h: u32) -> Result<Self> {
        Self::build(g, h, Updater::Recompute)
    }

    fn build(g: &'g Graph, h: u32, updater: Updater) -> Result<Self> {
        let hdeg = initial_h_degrees(g, h)?;
        let n = g.vertex_count();
        Ok(PeelState {
            g,
            h,
            updater,
            queue: BucketQueue::new(&hdeg),
            hdeg,
            alive: AliveMask::all(n),
            core: vec![0; n],
            ws: Workspace::new(n),
        })
    }

    pub fn hdeg(&self) -> &[u32] {
        &self.hdeg
    }

    pub fn alive(&self) -> &AliveMask {
        &self.alive
    }

    pub fn core(&self) -> &[u32] {
        &self.core
    }

    /// The running `k`.
    pub fn current_k(&self) -> u32 {
        self.queue.cursor()
    }

    /// Deletes the next vertex and reports what changed.
    pub fn step(&mut self) -> Option<PeelStep> {
        let (k, v) = self.peel_next()?;
        let members = self.ws.nbh.members();
        let mut entries = Vec::with_capacity(members.len());
        let mut joined = Vec::new();
        for (&u, &lost) in members.iter().zip(&self.ws.lost) {
            let new_hdeg = self.hdeg[u as usize];
            entries.push(UpdateEntry {
                vertex: u,
                new_hdeg,
                lost,
            });
            if new_hdeg <= k {
                joined.push(u);
            }
        }
        Some(PeelStep {
            vertex: v,
            k,
            outcome: UpdateOutcome { entries },
            joined,
        })
    }

    /// Peels everything and returns the core numbers.
    pub fn run(mut self) -> Vec<u32> {
        while self.peel_next().is_some() {}
        self.core
    }

    fn peel_next(&mut self) -> Option<(u32, VertexId)> {
        let (k, v) = self.queue.pop(&self.alive)?;
        self.core[v as usize] = k;
        let (g, h) = (self.g, self.h);
        self.ws
            .explore(g, &self.alive, v, h)
            .expect("popped vertex is alive");
        match self.updater {
            Updater::Local(variant) => {
                self.ws
                    .compute_losses(g, &self.alive, variant == UpdateVariant::Bitmap)
                    .expect("neighborhood is fresh");
                self.alive.remove(v);
                for (&u, &lost) in self.ws.nbh.members().iter().zip(&self.ws.lost) {
                    let d = &mut self.hdeg[u as usize];
                    *d -= lost;
                    self.queue.lower(u, *d);
                }
            }
            Updater::Recompute => {
                self.alive.remove(v);
                self.ws.lost.clear();
                for &u in self.ws.nbh.members() {
                    let fresh = h_degree(g, &self.alive, u, h, &mut self.ws.scratch);
                    let d = &mut self.hdeg[u as usize];
                    self.ws.lost.push(*d - fresh);
                    *d = fresh;
                    self.queue.lower(u, fresh);
                }
            }
        }
        Some((k, v))
    }
}

/// Core numbers by peeling with BFS recomputation of every affected
/// h-degree.
pub fn peel_baseline(g: &Graph, h: u32) -> Result<CoreResult> {
    let start = Instant::now();
    let core = PeelState::recomputing(g, h)?.run();
    Ok(CoreResult::new(
        h,
        Algorithm::Baseline,
        core,
        start.elapsed(),
    ))
}

/// Core numbers by peeling with local h-degree updates.
///
/// With `h = 1` no reachability is needed and the classic bin-sort peeling
/// runs instead.
pub fn peel_khcore(g: &Graph, h: u32, variant: UpdateVariant) -> Result<CoreResult> {
    let start = Instant::now();
    let core = match h {
        0 => return Err(Error::InvalidHop),
        1 => classic_core_numbers(g),
        _ => PeelState::new(g, h, variant)?.run(),
    };
    Ok(CoreResult::new(
        h,
        Algorithm::KhCore(variant),
        core,
        start.elapsed(),
    ))
}
