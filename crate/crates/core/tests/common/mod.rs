#![allow(dead_code)]

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use khcore::{
    gnp, h_bfs, induced_local_subgraph, load_edge_list, AliveMask, Graph, HopScratch, LoadOptions,
    ReachTable,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One member of the seeded random suite.
pub struct Case {
    pub seed: u64,
    pub n: usize,
    pub p: f64,
    pub graph: Graph,
}

/// `count` Erdős–Rényi graphs with `n` in `[5, 60]` and `p` in
/// `[0.05, 0.3]`, reproducible from their index.
pub fn random_suite(count: u64) -> Vec<Case> {
    (0..count)
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + seed);
            let n = rng.random_range(5..=60);
            let p = rng.random_range(0.05..=0.3);
            Case {
                seed,
                n,
                p,
                graph: gnp(n, p, seed),
            }
        })
        .collect()
}

pub fn data_dir() -> PathBuf {
    match std::env::var_os("KHCORE_DATA_DIR") {
        Some(dir) => PathBuf::from(dir),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"),
    }
}

/// File stems a dataset may be stored under.
fn aliases(name: &str) -> &'static [&'static str] {
    match name {
        "bio-CE-CX" => &[
            "bio-CE-CX.edges",
            "bio-CE-CX.txt",
            "bio-CE-CX.mtx",
            "bio-CE-CX",
        ],
        "ca-AstroPh" => &[
            "ca-AstroPh.txt",
            "CA-AstroPh.txt",
            "ca-AstroPh.edges",
            "ca-AstroPh",
        ],
        "douban" => &["out.douban", "douban.edges", "douban.txt", "douban"],
        "com-amazon" => &[
            "com-amazon.ungraph.txt",
            "com-amazon.txt",
            "com-amazon.edges",
            "com-amazon",
        ],
        _ => &[],
    }
}

/// Loads a dataset from [`data_dir`], or `None` when no candidate file
/// exists.
pub fn dataset(name: &str) -> Option<Graph> {
    let dir = data_dir();
    for file in aliases(name) {
        let path = dir.join(file);
        if !path.is_file() {
            continue;
        }
        let options = LoadOptions {
            skip_data_lines: usize::from(path.extension().is_some_and(|e| e == "mtx")),
            ..LoadOptions::default()
        };
        let reader = BufReader::new(File::open(&path).expect("dataset opens"));
        return Some(
            load_edge_list(reader, &options).unwrap_or_else(|e| panic!("{}: {e}", path.display())),
        );
    }
    None
}

/// Replays the worked peel on the running example: deletes v1, v2, v3, then
/// builds the 2-hop reach table of v5. Returns the first word of every row
/// after seeding, after one hop and after two hops.
pub fn running_example_trace() -> [Vec<u64>; 3] {
    let (g, v) = khcore::fixtures::running_example();
    let mut alive = AliveMask::all(g.vertex_count());
    for i in 1..=3 {
        alive.remove(v(i));
    }
    let mut scratch = HopScratch::new(g.vertex_count());
    let nbh = h_bfs(&g, &alive, v(5), 2, &mut scratch).unwrap();
    let mut edges = Vec::new();
    induced_local_subgraph(&g, &alive, &nbh, &scratch, &mut edges).unwrap();
    let mut reach = ReachTable::new();
    reach.seed_neighborhood(&nbh, 2);
    let words = |r: &ReachTable| (0..r.rows()).map(|i| r.row(i)[0]).collect::<Vec<u64>>();
    let init = words(&reach);
    reach.expand(&edges, 1);
    let one = words(&reach);
    reach.expand(&edges, 1);
    let two = words(&reach);
    [init, one, two]
}
