//! Approximate (k,h)-core decomposition from a uniform vertex sample.
//!
//! A fraction `r` of the vertices is drawn once. Each vertex `v` counts the
//! sampled members of its h-neighborhood (`select[v]`) and fixes its own
//! sampling rate `rate[v] = select[v] / d_v^h(G)` at the start. While
//! peeling, only `select` is maintained. The h-degree is estimated as
//! `select[v] / rate[v]`, so reachability only has to be tracked towards
//! sampled vertices.
//!
//! `select` stays exact for the alive set: after any sequence of deletions
//! it equals the number of alive sampled vertices within `h` hops. Vertices
//! whose rate is zero have no estimator; their h-degree is tracked exactly.
//!
//! The sample is drawn by a partial Fisher–Yates shuffle of `0..n` driven by
//! ChaCha8 seeded from the caller's seed, so a seed picks the same sample on
//! every platform.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::decomp::{reached_prefix, Algorithm, BucketQueue, CoreResult, Workspace};
use crate::error::{Error, Result};
use crate::graph::{h_count, induced_local_subgraph, AliveMask, Graph, HNeighborhood, HopScratch};
use crate::reach::ReachTable;
use crate::VertexId;

/// `select / rate`, the estimated h-degree.
pub fn estimate_h_degree(select: u32, rate: f64) -> f64 {
    select as f64 / rate
}

/// Sample membership and per-vertex counts for one sampling run.
#[derive(Clone, Debug)]
pub struct SampleState {
    rate: f64,
    seed: u64,
    in_sample: Vec<bool>,
    sample_size: usize,
    init_hdeg: Vec<u32>,
    init_select: Vec<u32>,
    select: Vec<u32>,
    // meaningful only where init_select == 0
    exact: Vec<u32>,
}

impl SampleState {
    /// Draws the sample and counts the sampled h-neighbors of every vertex.
    pub fn init(g: &Graph, h: u32, rate: f64, seed: u64) -> Result<Self> {
        check_params(h, rate)?;
        let n = g.vertex_count();
        let in_sample = draw_sample(n, rate, seed);
        let alive = AliveMask::all(n);
        let mut scratch = HopScratch::new(n);
        let (init_hdeg, init_select): (Vec<u32>, Vec<u32>) = g
            .vertices()
            .map(|v| h_count(g, &alive, v, h, &mut scratch, Some(&in_sample)))
            .unzip();
        Ok(Self::from_counts(
            rate,
            seed,
            in_sample,
            init_hdeg,
            init_select,
        ))
    }

    pub(crate) fn from_counts(
        rate: f64,
        seed: u64,
        in_sample: Vec<bool>,
        init_hdeg: Vec<u32>,
        init_select: Vec<u32>,
    ) -> Self {
        let sample_size = in_sample.iter().filter(|&&s| s).count();
        SampleState {
            rate,
            seed,
            sample_size,
            in_sample,
            select: init_select.clone(),
            exact: init_hdeg.clone(),
            init_hdeg,
            init_select,
        }
    }

    pub fn sampling_rate(&self) -> f64 {
        self.rate
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn sample_size(&self) -> usize {
        self.sample_size
    }

    pub fn in_sample(&self, v: VertexId) -> bool {
        self.in_sample[v as usize]
    }

    pub fn sample_flags(&self) -> &[bool] {
        &self.in_sample
    }

    /// Current number of alive sampled vertices within `h` hops of `v`.
    pub fn select(&self, v: VertexId) -> u32 {
        self.select[v as usize]
    }

    /// `select[v] / d_v^h(G)` at initialization; zero for vertices with no
    /// sampled h-neighbor.
    pub fn vertex_rate(&self, v: VertexId) -> f64 {
        let v = v as usize;
        if self.init_select[v] == 0 {
            0.0
        } else {
            self.init_select[v] as f64 / self.init_hdeg[v] as f64
        }
    }

    /// Whether `v` has no estimator and is tracked exactly.
    pub fn is_exact_fallback(&self, v: VertexId) -> bool {
        self.init_select[v as usize] == 0
    }

    /// Current h-degree estimate of `v`.
    pub fn est_hdeg(&self, v: VertexId) -> f64 {
        if self.is_exact_fallback(v) {
            self.exact[v as usize] as f64
        } else {
            estimate_h_degree(self.select(v), self.vertex_rate(v))
        }
    }

    /// `floor(est_hdeg(v))`, computed in integers.
    pub(crate) fn key(&self, v: VertexId) -> u32 {
        let v = v as usize;
        let scaled = self.select[v] as u64 * self.init_hdeg[v] as u64;
        match scaled.checked_div(self.init_select[v] as u64) {
            Some(key) => key as u32,
            None => self.exact[v],
        }
    }

    /// Applies one member's losses: `sampled` sampled vertices (the deleted
    /// one included) and `all` vertices in total.
    pub(crate) fn apply_loss(&mut self, u: VertexId, sampled: u32, all: u32) {
        let u = u as usize;
        self.select[u] -= sampled;
        if self.init_select[u] == 0 {
            self.exact[u] -= all;
        }
    }

    pub(crate) fn set_counts(&mut self, u: VertexId, total: u32, sampled: u32) {
        let u = u as usize;
        self.select[u] = sampled;
        self.exact[u] = total;
    }
}

pub(crate) fn check_params(h: u32, rate: f64) -> Result<()> {
    if h == 0 {
        return Err(Error::InvalidHop);
    }
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(Error::InvalidRate(rate));
    }
    Ok(())
}

pub(crate) fn draw_sample(n: usize, rate: f64, seed: u64) -> Vec<bool> {
    let size = ((rate * n as f64).round() as usize).min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ids: Vec<VertexId> = (0..n as VertexId).collect();
    let (chosen, _) = ids.partial_shuffle(&mut rng, size);
    let mut flags = vec![false; n];
    for &v in chosen.iter() {
        flags[v as usize] = true;
    }
    flags
}

/// For each member of `ws.nbh`, counts the losses a deletion of the source
/// causes: sampled losses into `ws.lost` (the source counted when sampled)
/// and, when some member is tracked exactly, total losses into
/// `ws.lost_exact`.
pub(crate) fn sample_losses(
    ws: &mut Workspace,
    g: &Graph,
    alive: &AliveMask,
    sample: &SampleState,
) -> Result<()> {
    let Workspace {
        scratch,
        nbh,
        edges,
        reach,
        lost,
        lost_exact,
        cum,
    } = ws;
    sample_losses_into(
        g, alive, sample, nbh, scratch, edges, reach, lost, lost_exact, cum,
    )
}

#[allow(clippy::too_many_arguments)]
fn sample_losses_into(
    g: &Graph,
    alive: &AliveMask,
    sample: &SampleState,
    nbh: &HNeighborhood,
    scratch: &HopScratch,
    edges: &mut Vec<(u32, u32)>,
    reach: &mut ReachTable,
    lost: &mut Vec<u32>,
    lost_exact: &mut Vec<u32>,
    cum: &mut Vec<u32>,
) -> Result<()> {
    let h = nbh.hops();
    let members = nbh.members();
    let prefix = nbh.count_within(h - 1);
    let source_sampled = sample.in_sample(nbh.source()) as u32;
    let need_exact = members.iter().any(|&u| sample.is_exact_fallback(u));

    induced_local_subgraph(g, alive, nbh, scratch, edges)?;

    // cum[j] = sampled members among the first j
    cum.clear();
    cum.push(0);
    for &w in &members[..prefix] {
        let last = *cum.last().unwrap();
        cum.push(last + sample.in_sample(w) as u32);
    }

    if need_exact {
        // every prefix member gets a column
        reach.reset(members.len(), prefix);
        for i in 0..prefix {
            reach.seed(i, i);
        }
    } else {
        // only sampled prefix members, in order
        reach.reset(members.len(), cum[prefix] as usize);
        for i in 0..prefix {
            if sample.in_sample(members[i]) {
                reach.seed(i, cum[i] as usize);
            }
        }
    }
    reach.expand(edges, h);

    lost.clear();
    lost_exact.clear();
    for i in 0..members.len() {
        let limit = nbh.count_within(h - nbh.distance(i));
        let row = reach.row(i);
        if need_exact {
            let mut unreached_sampled = 0u32;
            let mut unreached = 0u32;
            for (j, &w) in members[..limit].iter().enumerate() {
                if !reach.reaches(i, j) {
                    unreached += 1;
                    unreached_sampled += sample.in_sample(w) as u32;
                }
            }
            lost.push(source_sampled + unreached_sampled);
            lost_exact.push(1 + unreached);
        } else {
            let cols = cum[limit] as usize;
            lost.push(source_sampled + (cols - reached_prefix(row, cols)) as u32);
        }
    }
    if !need_exact {
        lost_exact.resize(members.len(), 0);
    }
    Ok(())
}

/// Sampled update for deleting `nbh.source()`: adjusts `select` (and the
/// exact fallback counts) of every member and returns the new estimates.
pub fn update_nbr_sample(
    g: &Graph,
    alive: &AliveMask,
    sample: &mut SampleState,
    nbh: &HNeighborhood,
    scratch: &HopScratch,
) -> Result<Vec<(VertexId, f64)>> {
    let (mut edges, mut reach) = (Vec::new(), ReachTable::new());
    let (mut lost, mut lost_exact, mut cum) = (Vec::new(), Vec::new(), Vec::new());
    sample_losses_into(
        g,
        alive,
        sample,
        nbh,
        scratch,
        &mut edges,
        &mut reach,
        &mut lost,
        &mut lost_exact,
        &mut cum,
    )?;
    let mut out = Vec::with_capacity(nbh.degree());
    for (i, &u) in nbh.members().iter().enumerate() {
        sample.apply_loss(u, lost[i], lost_exact[i]);
        out.push((u, sample.est_hdeg(u)));
    }
    Ok(out)
}

/// Sequential sampled peeling.
pub struct SamplePeelState<'g> {
    g: &'g Graph,
    h: u32,
    sample: SampleState,
    alive: AliveMask,
    core: Vec<u32>,
    queue: BucketQueue,
    ws: Workspace,
}

impl<'g> SamplePeelState<'g> {
    pub fn new(g: &'g Graph, h: u32, rate: f64, seed: u64) -> Result<Self> {
        let sample = SampleState::init(g, h, rate, seed)?;
        let n = g.vertex_count();
        let keys: Vec<u32> = g.vertices().map(|v| sample.key(v)).collect();
        Ok(SamplePeelState {
            g,
            h,
            sample,
            alive: AliveMask::all(n),
            core: vec![0; n],
            queue: BucketQueue::new(&keys),
            ws: Workspace::new(n),
        })
    }

    pub fn sample(&self) -> &SampleState {
        &self.sample
    }

    pub fn alive(&self) -> &AliveMask {
        &self.alive
    }

    /// Deletes the next vertex; returns it with its assigned core number.
    pub fn step(&mut self) -> Option<(VertexId, u32)> {
        let (k, v) = self.queue.pop(&self.alive)?;
        self.core[v as usize] = k;
        let g = self.g;
        self.ws
            .explore(g, &self.alive, v, self.h)
            .expect("popped vertex is alive");
        sample_losses(&mut self.ws, g, &self.alive, &self.sample).expect("neighborhood is fresh");
        self.alive.remove(v);
        for (i, &u) in self.ws.nbh.members().iter().enumerate() {
            self.sample
                .apply_loss(u, self.ws.lost[i], self.ws.lost_exact[i]);
            self.queue.lower(u, self.sample.key(u));
        }
        Some((v, k))
    }

    pub fn run(mut self) -> Vec<u32> {
        while self.step().is_some() {}
        self.core
    }
}

/// Estimated core numbers by sampled peeling.
///
/// A vertex joins the bucket of the running `k` once its estimate drops
/// below `k + 1`. With `rate = 1` every estimate is exact and the result
/// equals the exact decomposition.
pub fn peel_sample(g: &Graph, h: u32, rate: f64, seed: u64) -> Result<CoreResult> {
    let start = Instant::now();
    let core = SamplePeelState::new(g, h, rate, seed)?.run();
    Ok(CoreResult::new(
        h,
        Algorithm::Sample { rate, seed },
        core,
        start.elapsed(),
    ))
}
