use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::VertexId;

/// Erdős–Rényi `G(n, p)` graph, reproducible from `seed`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as VertexId {
        for v in u + 1..n as VertexId {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        assert_eq!(gnp(30, 0.2, 7), gnp(30, 0.2, 7));
        assert_eq!(gnp(10, 1.0, 1).edge_count(), 45);
        assert_eq!(gnp(10, 0.0, 1).edge_count(), 0);
    }
}
