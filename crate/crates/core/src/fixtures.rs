//! Small graphs with known decompositions.

use crate::graph::{load_edge_list, Graph, LoadOptions};
use crate::VertexId;

/// Edge list of the 14-vertex running example, labels `1..=14`.
pub const RUNNING_EXAMPLE: &str = include_str!("../fixtures/running_example.txt");

/// The running example and a map from label `i` (vertex `v_i`) to its dense
/// id.
///
/// With `h = 2` its core numbers are 4 for `v1..v3`, 5 for `v4..v7` and 6
/// for `v8..v14`.
pub fn running_example() -> (Graph, fn(u32) -> VertexId) {
    let g = load_edge_list(RUNNING_EXAMPLE.as_bytes(), &LoadOptions::default())
        .expect("fixture parses");
    // labels first appear in order 1, 2, ..., 14
    debug_assert!(g
        .labels()
        .iter()
        .enumerate()
        .all(|(i, &l)| l == i as u64 + 1));
    (g, |i| i - 1)
}
