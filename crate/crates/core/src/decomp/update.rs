use crate::error::Result;
use crate::graph::{induced_local_subgraph, AliveMask, Graph, HNeighborhood, HopScratch};
use crate::reach::{ReachSetTable, ReachTable};
use crate::VertexId;

/// Effect of deleting one vertex on a single member of its h-neighborhood.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UpdateEntry {
    pub vertex: VertexId,
    /// h-degree after the deletion.
    pub new_hdeg: u32,
    /// `1 + |F_u|`: the deleted vertex plus the members that fall out of
    /// range with it.
    pub lost: u32,
}

/// Per-member degree changes for one deletion, in neighborhood order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UpdateOutcome {
    pub entries: Vec<UpdateEntry>,
}

impl UpdateOutcome {
    fn from_losses(nbh: &HNeighborhood, hdeg: &[u32], lost: &[u32]) -> Self {
        let entries = nbh
            .members()
            .iter()
            .zip(lost)
            .map(|(&u, &lost)| UpdateEntry {
                vertex: u,
                new_hdeg: hdeg[u as usize] - lost,
                lost,
            })
            .collect();
        UpdateOutcome { entries }
    }

    pub fn get(&self, u: VertexId) -> Option<&UpdateEntry> {
        self.entries.iter().find(|e| e.vertex == u)
    }
}

/// Set-based h-degree update for deleting `nbh.source()`.
///
/// `alive` is the state before the deletion and `hdeg` holds current
/// h-degrees. Only the subgraph induced by `nbh` is explored. `scratch` must
/// be the one that built `nbh`.
pub fn update_nbr(
    g: &Graph,
    alive: &AliveMask,
    hdeg: &[u32],
    nbh: &HNeighborhood,
    scratch: &HopScratch,
) -> Result<UpdateOutcome> {
    let mut edges = Vec::new();
    let mut lost = Vec::new();
    set_losses(g, alive, nbh, scratch, &mut edges, &mut lost)?;
    Ok(UpdateOutcome::from_losses(nbh, hdeg, &lost))
}

/// Bitmap h-degree update; same contract as [`update_nbr`].
pub fn bitmap_update(
    g: &Graph,
    alive: &AliveMask,
    hdeg: &[u32],
    nbh: &HNeighborhood,
    scratch: &HopScratch,
) -> Result<UpdateOutcome> {
    let mut edges = Vec::new();
    let mut reach = ReachTable::new();
    let mut lost = Vec::new();
    bitmap_losses(g, alive, nbh, scratch, &mut edges, &mut reach, &mut lost)?;
    Ok(UpdateOutcome::from_losses(nbh, hdeg, &lost))
}

pub(crate) fn set_losses(
    g: &Graph,
    alive: &AliveMask,
    nbh: &HNeighborhood,
    scratch: &HopScratch,
    edges: &mut Vec<(u32, u32)>,
    lost: &mut Vec<u32>,
) -> Result<()> {
    let h = nbh.hops();
    induced_local_subgraph(g, alive, nbh, scratch, edges)?;
    let mut reach = ReachSetTable::seed_neighborhood(nbh, h);
    reach.expand(edges, h);

    lost.clear();
    for i in 0..nbh.degree() {
        let s = nbh.distance(i);
        let limit = nbh.count_within(h - s);
        let unreached = (0..limit).filter(|&j| !reach.reaches(i, j as u32)).count();
        lost.push(1 + unreached as u32);
    }
    Ok(())
}

pub(crate) fn bitmap_losses(
    g: &Graph,
    alive: &AliveMask,
    nbh: &HNeighborhood,
    scratch: &HopScratch,
    edges: &mut Vec<(u32, u32)>,
    reach: &mut ReachTable,
    lost: &mut Vec<u32>,
) -> Result<()> {
    let h = nbh.hops();
    induced_local_subgraph(g, alive, nbh, scratch, edges)?;
    reach.seed_neighborhood(nbh, h);
    reach.expand(edges, h);

    lost.clear();
    for i in 0..nbh.degree() {
        let s = nbh.distance(i);
        let limit = nbh.count_within(h - s);
        lost.push(1 + (limit - reached_prefix(reach.row(i), limit)) as u32);
    }
    Ok(())
}

/// Number of set bits among the first `limit` columns of a row.
#[inline]
pub(crate) fn reached_prefix(row: &[u64], limit: usize) -> usize {
    let full = limit / 64;
    let mut count: usize = row[..full].iter().map(|w| w.count_ones() as usize).sum();
    let rem = limit % 64;
    if rem != 0 {
        count += (row[full] & ((1u64 << rem) - 1)).count_ones() as usize;
    }
    count
}

/// Buffers reused across peels by one worker.
#[derive(Debug)]
pub(crate) struct Workspace {
    pub scratch: HopScratch,
    pub nbh: HNeighborhood,
    pub edges: Vec<(u32, u32)>,
    pub reach: ReachTable,
    pub lost: Vec<u32>,
    pub lost_exact: Vec<u32>,
    pub cum: Vec<u32>,
}

impl Workspace {
    pub(crate) fn new(n: usize) -> Self {
        Workspace {
            scratch: HopScratch::new(n),
            nbh: HNeighborhood::default(),
            edges: Vec::new(),
            reach: ReachTable::new(),
            lost: Vec::new(),
            lost_exact: Vec::new(),
            cum: Vec::new(),
        }
    }

    /// Rebuilds `nbh` around `v`.
    pub(crate) fn explore(
        &mut self,
        g: &Graph,
        alive: &AliveMask,
        v: VertexId,
        h: u32,
    ) -> Result<()> {
        self.nbh.rebuild(g, alive, v, h, &mut self.scratch)
    }

    /// Fills `lost` for the current neighborhood.
    pub(crate) fn compute_losses(
        &mut self,
        g: &Graph,
        alive: &AliveMask,
        bitmap: bool,
    ) -> Result<()> {
        if bitmap {
            bitmap_losses(
                g,
                alive,
                &self.nbh,
                &self.scratch,
                &mut self.edges,
                &mut self.reach,
                &mut self.lost,
            )
        } else {
            set_losses(
                g,
                alive,
                &self.nbh,
                &self.scratch,
                &mut self.edges,
                &mut self.lost,
            )
        }
    }
}
