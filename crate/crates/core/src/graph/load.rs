use std::collections::HashMap;
use std::io::BufRead;

use super::Graph;
use crate::error::{Error, Result};
use crate::VertexId;

/// Knobs for [`load_edge_list`].
#[derive(Clone, Debug)]
pub struct LoadOptions {
    /// Lines starting with any of these characters are skipped.
    pub comment_prefixes: Vec<char>,
    /// Number of leading non-comment lines to skip, e.g. the size line of a
    /// Matrix Market file.
    pub skip_data_lines: usize,
    /// Reject lines carrying more than two tokens. When false, extra columns
    /// (weights, timestamps) are ignored.
    pub strict_columns: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            comment_prefixes: vec!['#', '%'],
            skip_data_lines: 0,
            strict_columns: false,
        }
    }
}

/// Reads a whitespace-separated edge list.
///
/// Labels are arbitrary non-negative integers and are remapped to dense ids
/// in order of first appearance. Self-loops and repeated edges are dropped.
pub fn load_edge_list<R: BufRead>(reader: R, options: &LoadOptions) -> Result<Graph> {
    let mut labels: Vec<u64> = Vec::new();
    let mut ids: HashMap<u64, VertexId> = HashMap::new();
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut skipped = 0usize;
    let mut saw_data = false;

    let mut intern = |label: u64| -> VertexId {
        *ids.entry(label).or_insert_with(|| {
            labels.push(label);
            (labels.len() - 1) as VertexId
        })
    };

    for (index, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = index + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with(options.comment_prefixes.as_slice()) {
            continue;
        }
        if skipped < options.skip_data_lines {
            skipped += 1;
            continue;
        }

        let mut tokens = trimmed.split_whitespace();
        let mut endpoint = || -> Result<u64> {
            let token = tokens.next().ok_or_else(|| Error::Parse {
                line: line_no,
                message: "expected two vertex labels".into(),
            })?;
            token.parse::<u64>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("`{token}` is not a non-negative integer label"),
            })
        };
        let a = endpoint()?;
        let b = endpoint()?;
        if options.strict_columns && tokens.next().is_some() {
            return Err(Error::Parse {
                line: line_no,
                message: "more than two columns".into(),
            });
        }

        saw_data = true;
        let u = intern(a);
        let v = intern(b);
        edges.push((u, v));
    }

    if !saw_data {
        return Err(Error::EmptyGraph);
    }
    Ok(Graph::with_labels(labels, edges))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> Result<Graph> {
        load_edge_list(text.as_bytes(), &LoadOptions::default())
    }

    #[test]
    fn triangle() {
        let g = load("0 1\n1 2\n2 0\n").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 3));
        assert!(g.vertices().all(|v| g.degree(v) == 2));
    }

    #[test]
    fn self_loops_and_duplicates_are_dropped() {
        let g = load("5 5\n5 7\n7 5\n").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        assert_eq!(g.label(0), 5);
        assert_eq!(g.label(1), 7);
        assert_eq!(g.dense_id(7), Some(1));
    }

    #[test]
    fn comments_and_extra_columns() {
        let g = load("% sym unweighted\n# header\n\n10 20 1.5\n20\t30 7 8\n").unwrap();
        assert_eq!(g.labels(), &[10, 20, 30]);
        assert_eq!(g.edge_count(), 2);

        let strict = LoadOptions {
            strict_columns: true,
            ..LoadOptions::default()
        };
        let err = load_edge_list("1 2 3\n".as_bytes(), &strict).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn matrix_market_size_line_can_be_skipped() {
        let opts = LoadOptions {
            skip_data_lines: 1,
            ..LoadOptions::default()
        };
        let g =
            load_edge_list("%%MatrixMarket matrix\n3 3 2\n1 2\n2 3\n".as_bytes(), &opts).unwrap();
        assert_eq!(g.labels(), &[1, 2, 3]);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        match load("0 1\n1 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            load("0 1\n7\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(load("-1 2\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn empty_input() {
        assert!(matches!(load(""), Err(Error::EmptyGraph)));
        assert!(matches!(
            load("# only comments\n\n"),
            Err(Error::EmptyGraph)
        ));
    }
}
