//! Result files.
//!
//! A core file holds one `label<TAB>core` line per vertex, sorted by the
//! original label. A summary is a flat block of `key=value` lines with a
//! fixed key order.

use std::fmt;
use std::io::{BufRead, Write};

use crate::decomp::{Algorithm, CoreResult};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Writes the core file for `core` over `g`'s original labels.
pub fn write_cores<W: Write>(mut out: W, g: &Graph, core: &[u32]) -> Result<()> {
    let mut rows: Vec<(u64, u32)> = g
        .labels()
        .iter()
        .copied()
        .zip(core.iter().copied())
        .collect();
    rows.sort_unstable();
    for (label, c) in rows {
        writeln!(out, "{label}\t{c}")?;
    }
    out.flush()?;
    Ok(())
}

/// Reads a core file as `(label, core)` pairs in file order.
pub fn read_cores<R: BufRead>(input: R) -> Result<Vec<(u64, u32)>> {
    let mut rows = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let bad = |message: &str| Error::Parse {
            line: i + 1,
            message: message.to_string(),
        };
        let (label, core) = line
            .split_once('\t')
            .ok_or_else(|| bad("expected label<TAB>core"))?;
        let label = label
            .trim()
            .parse()
            .map_err(|_| bad("label is not an integer"))?;
        let core = core
            .trim()
            .parse()
            .map_err(|_| bad("core is not an integer"))?;
        rows.push((label, core));
    }
    Ok(rows)
}

/// Aligns two core files by label. Both must list the same labels.
pub fn align_cores(
    exact: &[(u64, u32)],
    est: &[(u64, u32)],
) -> Result<(Vec<u64>, Vec<u32>, Vec<u32>)> {
    let mut a = exact.to_vec();
    let mut b = est.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a.len() != b.len() || a.iter().zip(&b).any(|(x, y)| x.0 != y.0) {
        return Err(Error::Mismatch("core files list different vertices".into()));
    }
    let labels = a.iter().map(|r| r.0).collect();
    Ok((
        labels,
        a.into_iter().map(|r| r.1).collect(),
        b.into_iter().map(|r| r.1).collect(),
    ))
}

/// Run summary.
#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub n: usize,
    pub m: usize,
    pub h: u32,
    pub algorithm: String,
    pub rate: Option<f64>,
    pub seed: Option<u64>,
    pub threads: usize,
    pub k_max: u32,
    pub elapsed_ms: f64,
}

impl Summary {
    pub fn new(g: &Graph, result: &CoreResult, threads: usize) -> Self {
        let (rate, seed) = match result.algorithm {
            Algorithm::Sample { rate, seed } => (Some(rate), Some(seed)),
            _ => (None, None),
        };
        Summary {
            n: g.vertex_count(),
            m: g.edge_count(),
            h: result.h,
            algorithm: result.algorithm.to_string(),
            rate,
            seed,
            threads,
            k_max: result.k_max,
            elapsed_ms: result.elapsed.as_secs_f64() * 1000.0,
        }
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "m={}", self.m)?;
        writeln!(f, "h={}", self.h)?;
        writeln!(f, "algorithm={}", self.algorithm)?;
        match self.rate {
            Some(r) => writeln!(f, "rate={r}")?,
            None => writeln!(f, "rate=none")?,
        }
        match self.seed {
            Some(s) => writeln!(f, "seed={s}")?,
            None => writeln!(f, "seed=none")?,
        }
        writeln!(f, "threads={}", self.threads)?;
        writeln!(f, "k_max_h={}", self.k_max)?;
        writeln!(f, "elapsed_ms={:.3}", self.elapsed_ms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{load_edge_list, LoadOptions};
    use std::time::Duration;

    #[test]
    fn core_file_round_trip_sorted_by_label() {
        let g = load_edge_list("30 10\n10 20\n".as_bytes(), &LoadOptions::default()).unwrap();
        let mut buf = Vec::new();
        write_cores(&mut buf, &g, &[1, 1, 1]).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "10\t1\n20\t1\n30\t1\n"
        );
        assert_eq!(
            read_cores(&buf[..]).unwrap(),
            vec![(10, 1), (20, 1), (30, 1)]
        );
    }

    #[test]
    fn malformed_core_line() {
        assert!(matches!(
            read_cores("1 2\n".as_bytes()),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn alignment_requires_same_labels() {
        assert!(align_cores(&[(1, 2)], &[(2, 2)]).is_err());
        let (l, a, b) = align_cores(&[(2, 5), (1, 4)], &[(1, 3), (2, 5)]).unwrap();
        assert_eq!((l, a, b), (vec![1, 2], vec![4, 5], vec![3, 5]));
    }

    #[test]
    fn summary_keys() {
        let g = Graph::from_edges(2, [(0, 1)]);
        let r = CoreResult::new(
            2,
            Algorithm::Sample { rate: 0.5, seed: 7 },
            vec![1, 1],
            Duration::from_millis(3),
        );
        let text = Summary::new(&g, &r, 4).to_string();
        let keys: Vec<&str> = text.lines().map(|l| l.split('=').next().unwrap()).collect();
        assert_eq!(
            keys,
            [
                "n",
                "m",
                "h",
                "algorithm",
                "rate",
                "seed",
                "threads",
                "k_max_h",
                "elapsed_ms"
            ]
        );
        assert!(text.contains("rate=0.5\nseed=7\n"));
    }
}
