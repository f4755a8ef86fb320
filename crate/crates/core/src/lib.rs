//! Distance-generalized core decomposition.
//!
//! The (k,h)-core of an undirected graph is the largest subgraph in which
//! every vertex has at least `k` other vertices within `h` hops, with
//! distances measured inside the subgraph. The core number of a vertex is
//! the largest `k` whose (k,h)-core contains it. For `h = 1` these are the
//! classic core numbers.
//!
//! ```
//! use khcore::{load_edge_list, peel_khcore, LoadOptions, UpdateVariant};
//!
//! // a 4-cycle with a pendant vertex
//! let g = load_edge_list("1 2\n2 3\n3 4\n4 1\n4 5\n".as_bytes(), &LoadOptions::default())?;
//! let r = peel_khcore(&g, 2, UpdateVariant::Bitmap)?;
//! assert_eq!(r.core, vec![3, 3, 3, 3, 3]);
//! assert_eq!(peel_khcore(&g, 1, UpdateVariant::Bitmap)?.core, vec![2, 2, 2, 2, 1]);
//! # Ok::<(), khcore::Error>(())
//! ```
//!
//! Drivers:
//!
//! * [`peel_baseline`]: peeling with BFS recomputation of affected
//!   h-degrees.
//! * [`peel_khcore`]: peeling with local h-degree updates.
//! * [`peel_sample`]: approximate core numbers from a vertex sample.
//! * [`peel_parallel`]: any of the above on several threads, with the same
//!   result as one thread.
//!
//! [`oracle`] holds brute-force references for testing.

pub mod decomp;
mod error;
pub mod fixtures;
pub mod graph;
pub mod metrics;
pub mod oracle;
pub mod output;
pub mod parallel;
pub mod reach;
pub mod sampling;

/// Dense vertex id, `0..n`.
pub type VertexId = u32;

pub use decomp::{
    bitmap_update, classic_core_numbers, initial_h_degrees, peel_baseline, peel_khcore, update_nbr,
    validate_core, Algorithm, CoreResult, PeelState, PeelStep, UpdateEntry, UpdateOutcome,
    UpdateVariant,
};
pub use error::{Error, Result};
pub use graph::{
    gnp, h_bfs, h_degree, induced_local_subgraph, load_edge_list, AliveMask, Graph, HNeighborhood,
    HopScratch, LoadOptions,
};
pub use metrics::{precision, top_s_precision, PrecisionReport};
pub use parallel::{parallel_init_degrees, peel_parallel, peel_sample_parallel, ParallelConfig};
pub use reach::{ReachSetTable, ReachTable};
pub use sampling::{estimate_h_degree, peel_sample, update_nbr_sample, SampleState};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/neighborhoods.md")]
    mod neighborhoods {}
    #[doc = include_str!("../../../book/src/peeling.md")]
    mod peeling {}
    #[doc = include_str!("../../../book/src/reachability.md")]
    mod reachability {}
    #[doc = include_str!("../../../book/src/sampling.md")]
    mod sampling {}
    #[doc = include_str!("../../../book/src/parallel.md")]
    mod parallel {}
    #[doc = include_str!("../../../book/src/accuracy.md")]
    mod accuracy {}
    #[doc = include_str!("../../../book/src/testing.md")]
    mod testing {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
