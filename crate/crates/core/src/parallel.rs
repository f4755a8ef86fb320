//! Multi-threaded peeling.
//!
//! Peeling proceeds in rounds. A round takes every alive vertex whose key
//! is at most the running `k` and deletes them together. Each round has
//! three phases:
//!
//! 1. In parallel, every batch vertex explores its h-neighborhood in the
//!    graph where the whole batch is still alive and computes the losses of
//!    its members.
//! 2. The batch is marked dead with core number `k`.
//! 3. A survivor reached by exactly one batch vertex keeps that vertex's
//!    loss, which is exact: no other batch vertex lies within `h` hops of
//!    it, so none of them sits on one of its short paths either. Survivors
//!    reached by several batch vertices are recounted by bounded BFS.
//!
//! Survivors whose new key is at most `k` form the next round at the same
//! `k`. Because h-degrees (and sampled counts) only shrink as vertices are
//! removed, the set of vertices deleted at each level does not depend on
//! the order of deletion, so every thread count yields the sequential
//! result.

use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

use crate::decomp::{Algorithm, BucketQueue, CoreResult, UpdateVariant, Workspace};
use crate::error::{Error, Result};
use crate::graph::{h_count, AliveMask, Graph};
use crate::sampling::{check_params, draw_sample, sample_losses, SampleState};
use crate::VertexId;

/// Thread count and work granularity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParallelConfig {
    pub threads: usize,
    /// Minimum number of vertices a worker takes at a time.
    pub chunk_size: usize,
}

impl ParallelConfig {
    pub fn new(threads: usize) -> Result<Self> {
        if threads == 0 {
            return Err(Error::InvalidThreads);
        }
        Ok(ParallelConfig {
            threads,
            chunk_size: 16,
        })
    }

    pub fn with_chunk_size(mut self, chunk_size: usize) -> Self {
        self.chunk_size = chunk_size.max(1);
        self
    }
}

impl Default for ParallelConfig {
    fn default() -> Self {
        ParallelConfig {
            threads: rayon::current_num_threads(),
            chunk_size: 16,
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Mode {
    Recompute,
    Local(UpdateVariant),
    Sample,
}

// one worker's findings for a survivor: (vertex, sampled or exact loss, total loss)
type Loss = (VertexId, u32, u32);

struct Pool {
    threads: ThreadPool,
    spaces: Vec<Mutex<Workspace>>,
    chunk: usize,
}

impl Pool {
    fn new(n: usize, cfg: ParallelConfig) -> Result<Self> {
        if cfg.threads == 0 {
            return Err(Error::InvalidThreads);
        }
        let threads = ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
        let spaces = (0..cfg.threads)
            .map(|_| Mutex::new(Workspace::new(n)))
            .collect();
        Ok(Pool {
            threads,
            spaces,
            chunk: cfg.chunk_size.max(1),
        })
    }

    fn with_ws<R>(&self, f: impl FnOnce(&mut Workspace) -> R) -> R {
        let i = rayon::current_thread_index().unwrap_or(0) % self.spaces.len();
        let mut ws = self.spaces[i].lock().expect("workspace lock");
        f(&mut ws)
    }

    /// `(total, marked)` counts within `h` hops for each of `vertices`.
    fn counts(
        &self,
        g: &Graph,
        alive: &AliveMask,
        h: u32,
        vertices: &[VertexId],
        marked: Option<&[bool]>,
    ) -> Vec<(u32, u32)> {
        self.threads.install(|| {
            vertices
                .par_iter()
                .with_min_len(self.chunk)
                .map(|&v| self.with_ws(|ws| h_count(g, alive, v, h, &mut ws.scratch, marked)))
                .collect()
        })
    }
}

/// Initial h-degrees computed with `cfg.threads` workers.
pub fn parallel_init_degrees(g: &Graph, h: u32, cfg: ParallelConfig) -> Result<Vec<u32>> {
    if h == 0 {
        return Err(Error::InvalidHop);
    }
    let pool = Pool::new(g.vertex_count(), cfg)?;
    let all: Vec<VertexId> = g.vertices().collect();
    let alive = AliveMask::all(g.vertex_count());
    Ok(pool
        .counts(g, &alive, h, &all, None)
        .into_iter()
        .map(|c| c.0)
        .collect())
}

struct Peeler<'g> {
    g: &'g Graph,
    h: u32,
    mode: Mode,
    pool: Pool,
    alive: AliveMask,
    core: Vec<u32>,
    hdeg: Vec<u32>,
    sample: Option<SampleState>,
    in_batch: Vec<bool>,
    touches: Vec<u32>,
}

impl<'g> Peeler<'g> {
    fn key(&self, v: VertexId) -> u32 {
        match &self.sample {
            Some(s) => s.key(v),
            None => self.hdeg[v as usize],
        }
    }

    fn run(mut self) -> Vec<u32> {
        let keys: Vec<u32> = self.g.vertices().map(|v| self.key(v)).collect();
        let mut queue = BucketQueue::new(&keys);
        let mut batch = Vec::new();
        while let Some(k) = queue.pop_bucket(&self.alive, &mut batch) {
            while !batch.is_empty() {
                let next = self.round(k, &batch, &mut queue);
                batch = next;
            }
        }
        self.core
    }

    /// Deletes `batch` at level `k` and returns the survivors that fell to
    /// `k` or below, sorted.
    fn round(&mut self, k: u32, batch: &[VertexId], queue: &mut BucketQueue) -> Vec<VertexId> {
        for &b in batch {
            self.in_batch[b as usize] = true;
        }
        let found = self.explore_batch(batch);

        for &b in batch {
            self.in_batch[b as usize] = false;
            self.alive.remove(b);
            self.core[b as usize] = k;
        }

        let mut touched = Vec::new();
        for part in &found {
            for &(u, _, _) in part {
                let t = &mut self.touches[u as usize];
                if *t == 0 {
                    touched.push(u);
                }
                *t += 1;
            }
        }
        let recount: Vec<VertexId> = touched
            .iter()
            .copied()
            .filter(|&u| matches!(self.mode, Mode::Recompute) || self.touches[u as usize] > 1)
            .collect();
        for part in &found {
            for &(u, lost, lost_total) in part {
                if self.touches[u as usize] != 1 || matches!(self.mode, Mode::Recompute) {
                    continue;
                }
                match self.sample.as_mut() {
                    Some(s) => s.apply_loss(u, lost, lost_total),
                    None => self.hdeg[u as usize] -= lost,
                }
            }
        }
        let marked = self.sample.as_ref().map(|s| s.sample_flags());
        let counts = self
            .pool
            .counts(self.g, &self.alive, self.h, &recount, marked);
        for (&u, &(total, sampled)) in recount.iter().zip(&counts) {
            match self.sample.as_mut() {
                Some(s) => s.set_counts(u, total, sampled),
                None => self.hdeg[u as usize] = total,
            }
        }

        let mut next = Vec::new();
        for &u in &touched {
            self.touches[u as usize] = 0;
            let key = self.key(u);
            if key <= k {
                next.push(u);
            } else {
                queue.lower(u, key);
            }
        }
        next.sort_unstable();
        next
    }

    fn explore_batch(&self, batch: &[VertexId]) -> Vec<Vec<Loss>> {
        let (g, h, alive, mode) = (self.g, self.h, &self.alive, self.mode);
        let in_batch = &self.in_batch;
        let sample = self.sample.as_ref();
        let pool = &self.pool;
        pool.threads.install(|| {
            batch
                .par_iter()
                .with_min_len(pool.chunk)
                .fold(Vec::new, |mut acc: Vec<Loss>, &b| {
                    pool.with_ws(|ws| {
                        ws.explore(g, alive, b, h).expect("batch vertex is alive");
                        match mode {
                            Mode::Recompute => {
                                ws.lost.clear();
                                ws.lost.resize(ws.nbh.degree(), 0);
                                ws.lost_exact.clear();
                                ws.lost_exact.resize(ws.nbh.degree(), 0);
                            }
                            Mode::Local(variant) => {
                                ws.compute_losses(g, alive, variant == UpdateVariant::Bitmap)
                                    .expect("neighborhood is fresh");
                                ws.lost_exact.clone_from(&ws.lost);
                            }
                            Mode::Sample => {
                                sample_losses(ws, g, alive, sample.expect("sample state"))
                                    .expect("neighborhood is fresh");
                            }
                        }
                        for (i, &u) in ws.nbh.members().iter().enumerate() {
                            if !in_batch[u as usize] {
                                acc.push((u, ws.lost[i], ws.lost_exact[i]));
                            }
                        }
                    });
                    acc
                })
                .collect()
        })
    }
}

/// Core numbers computed by round-based peeling on `cfg.threads` workers.
///
/// Accepts [`Algorithm::Baseline`], [`Algorithm::KhCore`] and
/// [`Algorithm::Sample`]. The result equals the single-threaded run of the
/// same algorithm (for sampling, with the same seed).
pub fn peel_parallel(
    g: &Graph,
    h: u32,
    algorithm: Algorithm,
    cfg: ParallelConfig,
) -> Result<CoreResult> {
    let start = Instant::now();
    if h == 0 {
        return Err(Error::InvalidHop);
    }
    let n = g.vertex_count();
    let pool = Pool::new(n, cfg)?;
    let all: Vec<VertexId> = g.vertices().collect();
    let everyone = AliveMask::all(n);
    let (mode, hdeg, sample) = match algorithm {
        Algorithm::Baseline | Algorithm::KhCore(_) => {
            let hdeg: Vec<u32> = pool
                .counts(g, &everyone, h, &all, None)
                .into_iter()
                .map(|c| c.0)
                .collect();
            let mode = match algorithm {
                Algorithm::KhCore(v) => Mode::Local(v),
                _ => Mode::Recompute,
            };
            (mode, hdeg, None)
        }
        Algorithm::Sample { rate, seed } => {
            check_params(h, rate)?;
            let flags = draw_sample(n, rate, seed);
            let counts = pool.counts(g, &everyone, h, &all, Some(&flags));
            let (total, hits) = counts.into_iter().unzip();
            (
                Mode::Sample,
                Vec::new(),
                Some(SampleState::from_counts(rate, seed, flags, total, hits)),
            )
        }
        other => return Err(Error::Unsupported(other.to_string())),
    };
    let peeler = Peeler {
        g,
        h,
        mode,
        pool,
        alive: everyone,
        core: vec![0; n],
        hdeg,
        sample,
        in_batch: vec![false; n],
        touches: vec![0; n],
    };
    let core = peeler.run();
    Ok(CoreResult::new(h, algorithm, core, start.elapsed()))
}

/// Shorthand for parallel sampled peeling.
pub fn peel_sample_parallel(
    g: &Graph,
    h: u32,
    rate: f64,
    seed: u64,
    cfg: ParallelConfig,
) -> Result<CoreResult> {
    peel_parallel(g, h, Algorithm::Sample { rate, seed }, cfg)
}
