//! Accuracy of estimated core numbers against exact ones.
//!
//! Precision is `1 - (sum of relative errors) / |V|`, where a vertex with
//! exact core `c` and estimate `e` contributes `|c - e| / c`. A vertex with
//! exact core 0 contributes 0 when the estimate is also 0 and 1 otherwise;
//! such vertices are counted in [`PrecisionReport::skipped_zero_core`].

use std::collections::HashSet;
use std::fmt;

use crate::decomp::CoreResult;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::VertexId;

#[derive(Clone, Debug, PartialEq)]
pub struct PrecisionReport {
    pub precision: f64,
    pub vertex_count: usize,
    /// Compared vertices whose exact core number is 0.
    pub skipped_zero_core: usize,
    pub top_s: Option<usize>,
    /// The vertex set a top-s comparison was restricted to.
    pub selected: Option<Vec<VertexId>>,
}

impl PrecisionReport {
    /// Flat `key=value` lines.
    pub fn to_kv(&self) -> String {
        let mut out = format!(
            "precision={:.6}\nvertex_count={}\nskipped_zero_core={}\n",
            self.precision, self.vertex_count, self.skipped_zero_core
        );
        if let Some(s) = self.top_s {
            out.push_str(&format!("top_s={s}\n"));
        }
        out
    }
}

impl fmt::Display for PrecisionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_kv())
    }
}

fn relative_error(exact: u32, est: u32) -> f64 {
    if exact == 0 {
        if est == 0 {
            0.0
        } else {
            1.0
        }
    } else {
        exact.abs_diff(est) as f64 / exact as f64
    }
}

fn check_lengths(exact: &[u32], est: &[u32]) -> Result<()> {
    if exact.len() != est.len() {
        return Err(Error::Mismatch(format!(
            "{} exact values against {} estimates",
            exact.len(),
            est.len()
        )));
    }
    Ok(())
}

/// Precision over the given vertices only.
pub fn precision_over(
    exact: &[u32],
    est: &[u32],
    vertices: &[VertexId],
) -> Result<PrecisionReport> {
    check_lengths(exact, est)?;
    let mut err = 0.0;
    let mut zero = 0;
    for &v in vertices {
        let (c, e) = (exact[v as usize], est[v as usize]);
        zero += (c == 0) as usize;
        err += relative_error(c, e);
    }
    let precision = if vertices.is_empty() {
        1.0
    } else {
        1.0 - err / vertices.len() as f64
    };
    Ok(PrecisionReport {
        precision,
        vertex_count: vertices.len(),
        skipped_zero_core: zero,
        top_s: None,
        selected: None,
    })
}

/// Precision over every vertex, from raw core arrays.
pub fn precision_of(exact: &[u32], est: &[u32]) -> Result<PrecisionReport> {
    let all: Vec<VertexId> = (0..exact.len() as VertexId).collect();
    precision_over(exact, est, &all)
}

/// Global precision of `est` against `exact`.
pub fn precision(exact: &CoreResult, est: &CoreResult) -> Result<PrecisionReport> {
    if exact.h != est.h {
        return Err(Error::Mismatch(format!(
            "h = {} against h = {}",
            exact.h, est.h
        )));
    }
    precision_of(&exact.core, &est.core)
}

/// The top-s vertex set derived from exact core numbers.
///
/// For every `k` from the largest down to 1, the connected components of the
/// subgraph induced by vertices with core at least `k` are listed, skipping
/// components already listed at a higher `k`. Components are ranked by `k`
/// (descending), size (descending) and smallest vertex. The result is the
/// union of the first `s`, sorted.
pub fn top_s_vertices(g: &Graph, exact: &[u32], s: usize) -> Vec<VertexId> {
    let n = g.vertex_count();
    let k_max = exact.iter().copied().max().unwrap_or(0);
    let mut seen: HashSet<Vec<VertexId>> = HashSet::new();
    let mut picked = vec![false; n];
    let mut taken = 0;
    let mut comp_of = vec![u32::MAX; n];
    for k in (1..=k_max).rev() {
        if taken == s {
            break;
        }
        let mut level = Vec::new();
        comp_of.fill(u32::MAX);
        for root in 0..n {
            if exact[root] < k || comp_of[root] != u32::MAX {
                continue;
            }
            let id = level.len() as u32;
            comp_of[root] = id;
            let mut comp = vec![root as VertexId];
            let mut head = 0;
            while head < comp.len() {
                let x = comp[head];
                head += 1;
                for &y in g.neighbors(x) {
                    if exact[y as usize] >= k && comp_of[y as usize] == u32::MAX {
                        comp_of[y as usize] = id;
                        comp.push(y);
                    }
                }
            }
            comp.sort_unstable();
            level.push(comp);
        }
        level.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        for comp in level {
            if taken == s {
                break;
            }
            if seen.contains(&comp) {
                continue;
            }
            for &v in &comp {
                picked[v as usize] = true;
            }
            seen.insert(comp);
            taken += 1;
        }
    }
    (0..n as VertexId).filter(|&v| picked[v as usize]).collect()
}

/// Precision restricted to the top-s vertex set of `exact`.
pub fn top_s_precision(
    exact: &CoreResult,
    est: &CoreResult,
    g: &Graph,
    s: usize,
) -> Result<PrecisionReport> {
    if s == 0 {
        return Err(Error::Mismatch("top-s needs s >= 1".into()));
    }
    precision(exact, est)?;
    top_s_precision_of(&exact.core, &est.core, g, s)
}

/// [`top_s_precision`] from raw core arrays.
pub fn top_s_precision_of(
    exact: &[u32],
    est: &[u32],
    g: &Graph,
    s: usize,
) -> Result<PrecisionReport> {
    check_lengths(exact, est)?;
    if exact.len() != g.vertex_count() {
        return Err(Error::Mismatch(format!(
            "{} core values for a graph of {} vertices",
            exact.len(),
            g.vertex_count()
        )));
    }
    let selected = top_s_vertices(g, exact, s);
    let mut report = precision_over(exact, est, &selected)?;
    report.top_s = Some(s);
    report.selected = Some(selected);
    Ok(report)
}
