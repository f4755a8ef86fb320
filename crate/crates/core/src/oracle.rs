//! Brute-force reference implementations.
//!
//! Nothing here reuses the traversal scratch, neighborhoods or reach tables
//! of the fast paths: every number is recomputed from plain breadth-first
//! searches on the graph. The costs are deliberately high; use these only
//! to check other code on small graphs.

use std::collections::VecDeque;
use std::fmt;
use std::time::Instant;

use crate::decomp::{Algorithm, CoreResult};
use crate::graph::{AliveMask, Graph};
use crate::VertexId;

/// Hop distances from `src` over vertices with `allowed[x]`, searched up to
/// `limit` hops. Unreached vertices are `None`.
fn distances(g: &Graph, allowed: &[bool], src: VertexId, limit: u32) -> Vec<Option<u32>> {
    let mut dist = vec![None; g.vertex_count()];
    dist[src as usize] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(x) = queue.pop_front() {
        let d = dist[x as usize].unwrap();
        if d == limit {
            continue;
        }
        for &y in g.neighbors(x) {
            if allowed[y as usize] && dist[y as usize].is_none() {
                dist[y as usize] = Some(d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

fn within(dist: &[Option<u32>], src: VertexId, h: u32) -> Vec<VertexId> {
    dist.iter()
        .enumerate()
        .filter(|&(x, d)| x != src as usize && d.is_some_and(|d| d <= h))
        .map(|(x, _)| x as VertexId)
        .collect()
}

/// Number of alive vertices other than `v` within `h` hops of `v`.
pub fn brute_h_degree(g: &Graph, alive: &AliveMask, v: VertexId, h: u32) -> u32 {
    let allowed: Vec<bool> = g.vertices().map(|x| alive.is_alive(x)).collect();
    within(&distances(g, &allowed, v, h), v, h).len() as u32
}

/// Core numbers by naive peeling: after every deletion each remaining
/// h-degree is recomputed from scratch and the minimum is found by a linear
/// scan.
pub fn brute_core_numbers(g: &Graph, h: u32) -> CoreResult {
    let start = Instant::now();
    let n = g.vertex_count();
    let mut alive = AliveMask::all(n);
    let mut core = vec![0; n];
    let mut k = 0;
    while alive.alive_count() > 0 {
        let (v, d) = alive
            .iter_alive()
            .map(|v| (v, brute_h_degree(g, &alive, v, h)))
            .min_by_key(|&(v, d)| (d, v))
            .unwrap();
        k = k.max(d);
        core[v as usize] = k;
        alive.remove(v);
    }
    CoreResult::new(h, Algorithm::BruteForce, core, start.elapsed())
}

/// Outcome of [`check_observations`].
#[derive(Clone, Debug, Default)]
pub struct ObservationReport {
    /// Members of `N_v^h` examined.
    pub members_checked: usize,
    /// `(u, |F_u|)` for every member, in vertex order.
    pub lost_sets: Vec<(VertexId, usize)>,
    pub violations: Vec<String>,
}

impl ObservationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn f_size(&self, u: VertexId) -> Option<usize> {
        self.lost_sets.iter().find(|e| e.0 == u).map(|e| e.1)
    }
}

impl fmt::Display for ObservationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "pass ({} members)", self.members_checked)
        } else {
            writeln!(f, "{} violation(s):", self.violations.len())?;
            for v in &self.violations {
                writeln!(f, "  {v}")?;
            }
            Ok(())
        }
    }
}

/// Checks, for every `u` in `N_v^h`, by exhaustive search on `g` and on
/// `g` without `v`:
///
/// * the members of `N_u^h` that are neither `v` nor within `h - s` hops of
///   `v` stay within `h` hops of `u` (`s` is the distance from `v` to `u`);
/// * `u` loses exactly `v` and the set `F_u` of vertices within `h - s` of
///   `v` that end up more than `h` hops away from `u`;
/// * every vertex `w` within `h - s` of `v` that is still within `h` hops of
///   `u` is at the same distance inside the subgraph induced by `N_v^h`,
///   and every vertex on any of their shortest paths belongs to `N_v^h`.
pub fn check_observations(g: &Graph, v: VertexId, h: u32) -> ObservationReport {
    let n = g.vertex_count();
    let mut report = ObservationReport::default();
    let everyone = vec![true; n];
    let mut without_v = everyone.clone();
    without_v[v as usize] = false;

    let unbounded = n as u32;
    let from_v = distances(g, &everyone, v, h);
    let nbh = within(&from_v, v, h);
    let mut in_nbh = vec![false; n];
    for &u in &nbh {
        in_nbh[u as usize] = true;
    }
    let near = |w: usize, r: u32| w != v as usize && from_v[w].is_some_and(|d| d <= r);

    // full distances in g - v from every vertex that can be a target
    let targets: Vec<Vec<Option<u32>>> = (0..n)
        .map(|w| {
            if near(w, h.saturating_sub(1)) {
                distances(g, &without_v, w as VertexId, unbounded)
            } else {
                Vec::new()
            }
        })
        .collect();

    for &u in &nbh {
        report.members_checked += 1;
        let s = from_v[u as usize].unwrap();
        let before = within(&distances(g, &everyone, u, h), u, h);
        let dist_after = distances(g, &without_v, u, unbounded);
        let after = within(&dist_after, u, h);
        let mut in_after = vec![false; n];
        for &w in &after {
            in_after[w as usize] = true;
        }

        for &w in &before {
            if w != v && !near(w as usize, h - s) && !in_after[w as usize] {
                report.violations.push(format!(
                    "v={v} h={h} u={u}: {w} is outside N_v^(h-s) but left N_u^h"
                ));
            }
        }

        let mut lost: Vec<VertexId> = before
            .iter()
            .copied()
            .filter(|&w| !in_after[w as usize])
            .collect();
        lost.sort_unstable();
        let mut expected: Vec<VertexId> = (0..n as VertexId)
            .filter(|&w| near(w as usize, h - s) && dist_after[w as usize].is_none_or(|d| d > h))
            .filter(|&w| w != u)
            .collect();
        report.lost_sets.push((u, expected.len()));
        expected.push(v);
        expected.sort_unstable();
        if lost != expected {
            report.violations.push(format!(
                "v={v} h={h} u={u}: lost {lost:?}, expected v plus F_u = {expected:?}"
            ));
        }

        let local = distances(g, &in_nbh, u, unbounded);
        for w in 0..n {
            if w == u as usize || !near(w, h - s) {
                continue;
            }
            let Some(d) = dist_after[w].filter(|&d| d <= h) else {
                continue;
            };
            if local[w] != Some(d) {
                report.violations.push(format!(
                    "v={v} h={h} u={u} w={w}: distance {d} in g - v but {:?} inside N_v^h",
                    local[w]
                ));
            }
            let from_w = &targets[w];
            for x in 0..n {
                let on_path =
                    matches!((dist_after[x], from_w[x]), (Some(a), Some(b)) if a + b == d);
                if on_path && !in_nbh[x] {
                    report.violations.push(format!(
                        "v={v} h={h} u={u} w={w}: shortest path passes through {x} outside N_v^h"
                    ));
                }
            }
        }
    }
    report.lost_sets.sort_unstable();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::running_example;

    #[test]
    fn path_endpoint_degree() {
        let g = Graph::from_edges(5, (0..4).map(|i| (i, i + 1)));
        let alive = AliveMask::all(5);
        assert_eq!(brute_h_degree(&g, &alive, 0, 2), 2);
        assert_eq!(brute_h_degree(&g, &alive, 4, 2), 2);
        assert_eq!(brute_h_degree(&g, &alive, 2, 2), 4);
    }

    #[test]
    fn running_example_cores() {
        let (g, v) = running_example();
        assert_eq!(brute_h_degree(&g, &AliveMask::all(14), v(1), 2), 4);
        let r = brute_core_numbers(&g, 2);
        for i in 1..=14 {
            let want = match i {
                1..=3 => 4,
                4..=7 => 5,
                _ => 6,
            };
            assert_eq!(r.core[v(i) as usize], want, "v{i}");
        }
    }

    #[test]
    fn edgeless_graph_is_all_zero() {
        let g = Graph::from_edges(4, []);
        assert_eq!(brute_core_numbers(&g, 3).core, vec![0; 4]);
    }

    #[test]
    fn running_example_observations() {
        let (g, v) = running_example();
        let r = check_observations(&g, v(1), 2);
        assert!(r.passed(), "{r}");
        assert_eq!(r.f_size(v(2)), Some(1));
        assert_eq!(r.f_size(v(4)), Some(0));
    }

    #[test]
    fn clique_observations_have_empty_f() {
        let mut edges = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                edges.push((a, b));
            }
        }
        let g = Graph::from_edges(5, edges);
        for h in 1..=3 {
            let r = check_observations(&g, 2, h);
            assert!(r.passed(), "{r}");
            assert!(r.lost_sets.iter().all(|e| e.1 == 0));
        }
    }
}
