//! Acceptance suite. Prints one line per criterion and exits nonzero when
//! any criterion fails.
//!
//! Criteria that need public datasets look for them in `KHCORE_DATA_DIR`
//! (default `data/` at the workspace root) and report NOT RUN when a file is
//! missing. Set `KHCORE_REQUIRE_DATASETS=1` to treat that as a failure.

mod common;

use std::fmt;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use khcore::fixtures::running_example;
use khcore::metrics::precision;
use khcore::oracle::{brute_core_numbers, check_observations};
use khcore::{
    gnp, peel_baseline, peel_khcore, peel_parallel, peel_sample, validate_core, Algorithm,
    CoreResult, Graph, ParallelConfig, UpdateVariant,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    /// Every runnable part passed; the dataset part was not run.
    Partial,
    NotRun,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Partial => "PARTIAL",
            Status::NotRun => "NOT RUN",
        })
    }
}

struct Outcome {
    status: Status,
    detail: String,
}

impl Outcome {
    fn check(ok: bool, detail: impl Into<String>) -> Self {
        Outcome {
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    /// Combines a runnable part with a dataset part that may be missing.
    fn with_dataset(local: Outcome, dataset: Option<Outcome>, name: &str) -> Self {
        match (local.status, dataset) {
            (Status::Fail, _) => local,
            (_, Some(d)) if d.status == Status::Fail => Outcome {
                status: Status::Fail,
                detail: format!("{}; {}", local.detail, d.detail),
            },
            (_, Some(d)) => Outcome {
                status: Status::Pass,
                detail: format!("{}; {}", local.detail, d.detail),
            },
            (_, None) => Outcome {
                status: Status::Partial,
                detail: format!("{}; {name} missing, dataset part not run", local.detail),
            },
        }
    }
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
}

/// Decompositions kept for the nesting check.
struct Kept {
    graph: Graph,
    results: Vec<CoreResult>,
}

const SUITE_SIZE: u64 = 200;

fn c1_running_example(kept: &mut Vec<Kept>) -> Outcome {
    let (g, v) = running_example();
    let runs = vec![
        peel_baseline(&g, 2).unwrap(),
        peel_khcore(&g, 2, UpdateVariant::SetBased).unwrap(),
        peel_khcore(&g, 2, UpdateVariant::Bitmap).unwrap(),
        peel_sample(&g, 2, 1.0, 1).unwrap(),
    ];
    let want: Vec<u32> = (1..=14)
        .map(|i| match i {
            1..=3 => 4,
            4..=7 => 5,
            _ => 6,
        })
        .collect();
    let mut bad = Vec::new();
    for r in &runs {
        let got: Vec<u32> = (1..=14).map(|i| r.core[v(i) as usize]).collect();
        if got != want {
            bad.push(format!("{} gave {got:?}", r.algorithm));
        }
    }
    kept.push(Kept {
        graph: g,
        results: runs,
    });
    if bad.is_empty() {
        Outcome::check(
            true,
            "baseline, khcore, khcore-bitmap, sample(r=1): 4/5/6 as expected",
        )
    } else {
        Outcome::check(false, bad.join("; "))
    }
}

fn c2_trace() -> Outcome {
    let [init, one, two] = common::running_example_trace();
    let ok = init == [1, 2, 4, 0, 0] && one == [1, 2, 4, 5, 6] && two == [5, 6, 7, 5, 6];
    Outcome::check(ok, format!("init {init:?}, hop 1 {one:?}, hop 2 {two:?}"))
}

fn c3_differential(kept: &mut Vec<Kept>) -> Outcome {
    let mut mismatches = Vec::new();
    let mut runs = 0;
    for case in common::random_suite(SUITE_SIZE) {
        let g = &case.graph;
        let mut results = Vec::new();
        for h in 1..=4 {
            let brute = brute_core_numbers(g, h);
            let others = [
                peel_baseline(g, h).unwrap(),
                peel_khcore(g, h, UpdateVariant::SetBased).unwrap(),
                peel_khcore(g, h, UpdateVariant::Bitmap).unwrap(),
            ];
            for r in &others {
                runs += 1;
                if r.core != brute.core {
                    mismatches.push(format!("{} on seed {} h {h}", r.algorithm, case.seed));
                }
            }
            results.push(brute);
            results.extend(others);
        }
        kept.push(Kept {
            graph: case.graph,
            results,
        });
    }
    Outcome::check(
        mismatches.is_empty(),
        format!(
            "{SUITE_SIZE} graphs x h=1..4, {runs} runs against brute force, {} mismatches{}",
            mismatches.len(),
            mismatches
                .first()
                .map(|m| format!(" (first: {m})"))
                .unwrap_or_default()
        ),
    )
}

fn c4_observations() -> Outcome {
    let trials = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = Vec::new();
    for trial in 0..trials {
        let n = rng.random_range(5..=40);
        let p = rng.random_range(0.05..=0.3);
        let g = gnp(n, p, rng.random());
        let v = rng.random_range(0..n as u32);
        let h = rng.random_range(1..=4);
        let report = check_observations(&g, v, h);
        if !report.passed() {
            failures.push(format!("trial {trial}: {}", report.violations[0]));
        }
    }
    Outcome::check(
        failures.is_empty(),
        format!(
            "{trials} (graph, v, h) trials, {} counterexamples{}",
            failures.len(),
            failures
                .first()
                .map(|f| format!(" (first: {f})"))
                .unwrap_or_default()
        ),
    )
}

fn c5_classic(datasets: &[(&str, Option<&Graph>)]) -> Outcome {
    let table = [
        ("bio-CE-CX", 78),
        ("ca-AstroPh", 56),
        ("douban", 15),
        ("com-amazon", 6),
    ];
    let mut parts = Vec::new();
    let mut missing = Vec::new();
    let mut ok = true;
    for (name, want) in table {
        match datasets.iter().find(|d| d.0 == name).and_then(|d| d.1) {
            Some(g) => {
                let r = peel_khcore(g, 1, UpdateVariant::Bitmap).unwrap();
                ok &= r.k_max == want;
                parts.push(format!("{name} k_max {} (want {want})", r.k_max));
            }
            None => missing.push(name),
        }
    }
    if !ok {
        return Outcome::check(false, parts.join(", "));
    }
    if parts.is_empty() {
        return Outcome {
            status: Status::NotRun,
            detail: format!("datasets missing: {}", missing.join(", ")),
        };
    }
    let mut detail = parts.join(", ");
    if !missing.is_empty() {
        detail.push_str(&format!("; missing: {}", missing.join(", ")));
        return Outcome {
            status: Status::Partial,
            detail,
        };
    }
    Outcome::check(true, detail)
}

fn c6_degeneration(bio: Option<&Graph>) -> Outcome {
    let mut bad = 0;
    let mut runs = 0;
    for case in common::random_suite(SUITE_SIZE) {
        for h in 1..=4 {
            runs += 1;
            let exact = peel_khcore(&case.graph, h, UpdateVariant::Bitmap).unwrap();
            let est = peel_sample(&case.graph, h, 1.0, case.seed).unwrap();
            bad += (exact.core != est.core) as usize;
        }
    }
    let local = Outcome::check(
        bad == 0,
        format!("random suite: {bad} of {runs} runs differ"),
    );
    let dataset = bio.map(|g| {
        let exact = peel_khcore(g, 2, UpdateVariant::Bitmap).unwrap();
        let est = peel_sample(g, 2, 1.0, 6).unwrap();
        Outcome::check(
            exact.core == est.core,
            format!("bio-CE-CX h=2 identical: {}", exact.core == est.core),
        )
    });
    Outcome::with_dataset(local, dataset, "bio-CE-CX")
}

fn c7_accuracy(bio: Option<&Graph>) -> Outcome {
    let Some(g) = bio else {
        return Outcome {
            status: Status::NotRun,
            detail: "bio-CE-CX missing".into(),
        };
    };
    let mut parts = Vec::new();
    let mut ok = true;
    for (h, rate, floor) in [(2, 0.2, 0.90), (3, 0.1, 0.97)] {
        let exact = peel_khcore(g, h, UpdateVariant::Bitmap).unwrap();
        let mean = (1..=5)
            .map(|seed| {
                precision(&exact, &peel_sample(g, h, rate, seed).unwrap())
                    .unwrap()
                    .precision
            })
            .sum::<f64>()
            / 5.0;
        ok &= mean >= floor;
        parts.push(format!(
            "h={h} r={rate}: mean precision {mean:.4} (floor {floor})"
        ));
    }
    Outcome::check(ok, parts.join(", "))
}

fn c8_threads(bio: Option<&Graph>) -> Outcome {
    let algorithms = |seed| {
        [
            Algorithm::Baseline,
            Algorithm::KhCore(UpdateVariant::SetBased),
            Algorithm::KhCore(UpdateVariant::Bitmap),
            Algorithm::Sample { rate: 0.5, seed },
        ]
    };
    let compare = |g: &Graph, h: u32, seed: u64| -> usize {
        let mut bad = 0;
        for algo in algorithms(seed) {
            let one = peel_parallel(g, h, algo, ParallelConfig::new(1).unwrap()).unwrap();
            for t in [2, 4, 8] {
                let cfg = ParallelConfig::new(t).unwrap().with_chunk_size(1);
                bad += (peel_parallel(g, h, algo, cfg).unwrap().core != one.core) as usize;
            }
        }
        bad
    };
    let mut bad = 0;
    let mut runs = 0;
    for case in common::random_suite(SUITE_SIZE) {
        for h in 1..=4 {
            bad += compare(&case.graph, h, case.seed);
            runs += 12;
        }
    }
    let local = Outcome::check(
        bad == 0,
        format!("random suite: {bad} of {runs} runs differ from t=1"),
    );
    let dataset = bio.map(|g| {
        let bad = compare(g, 2, 8);
        Outcome::check(bad == 0, format!("bio-CE-CX h=2: {bad} of 12 runs differ"))
    });
    Outcome::with_dataset(local, dataset, "bio-CE-CX")
}

fn median_time(mut f: impl FnMut()) -> Duration {
    let mut times: Vec<Duration> = (0..3)
        .map(|_| {
            let start = Instant::now();
            f();
            start.elapsed()
        })
        .collect();
    times.sort();
    times[1]
}

/// Median times of baseline, set-based and bitmap peeling at `h = 3`.
fn race(g: &Graph) -> (Duration, Duration, Duration, bool) {
    let base = median_time(|| drop(peel_baseline(g, 3).unwrap()));
    let set = median_time(|| drop(peel_khcore(g, 3, UpdateVariant::SetBased).unwrap()));
    let bitmap = median_time(|| drop(peel_khcore(g, 3, UpdateVariant::Bitmap).unwrap()));
    let ok = base.as_secs_f64() >= 2.0 * bitmap.as_secs_f64() && bitmap <= set;
    (base, set, bitmap, ok)
}

fn describe_race(
    label: &str,
    (base, set, bitmap, _): (Duration, Duration, Duration, bool),
) -> String {
    format!(
        "{label}: baseline {:.2}s, set {:.2}s, bitmap {:.2}s, speedup {:.1}x",
        base.as_secs_f64(),
        set.as_secs_f64(),
        bitmap.as_secs_f64(),
        base.as_secs_f64() / bitmap.as_secs_f64()
    )
}

fn c9_performance(bio: Option<&Graph>) -> Outcome {
    if let Some(g) = bio {
        let r = race(g);
        return Outcome::check(r.3, describe_race("bio-CE-CX h=3", r));
    }
    // Stand-in workload, reported but not a substitute for the dataset run.
    let g = gnp(2000, 0.004, 9);
    let r = race(&g);
    let detail = format!(
        "bio-CE-CX missing; {}",
        describe_race("synthetic G(2000, 0.004) h=3", r)
    );
    if r.3 {
        Outcome {
            status: Status::NotRun,
            detail,
        }
    } else {
        Outcome::check(false, detail)
    }
}

fn c10_nesting(kept: &[Kept]) -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for item in kept {
        for r in &item.results {
            checked += 1;
            for k in 0..=r.k_max {
                let outer = r.extract_core(k);
                let inner = r.extract_core(k + 1);
                if !inner.iter().all(|v| outer.binary_search(v).is_ok()) {
                    bad.push(format!("{} h={} not nested at k={k}", r.algorithm, r.h));
                }
                if !validate_core(&item.graph, r.h, &outer, k) {
                    bad.push(format!("{} h={} invalid at k={k}", r.algorithm, r.h));
                }
            }
        }
    }
    Outcome::check(
        bad.is_empty(),
        format!(
            "{checked} decompositions, {} violations{}",
            bad.len(),
            bad.first()
                .map(|b| format!(" (first: {b})"))
                .unwrap_or_default()
        ),
    )
}

fn main() -> ExitCode {
    let require = std::env::var("KHCORE_REQUIRE_DATASETS").is_ok_and(|v| v == "1");
    let names = ["bio-CE-CX", "ca-AstroPh", "douban", "com-amazon"];
    let loaded: Vec<(&str, Option<Graph>)> =
        names.iter().map(|&n| (n, common::dataset(n))).collect();
    let datasets: Vec<(&str, Option<&Graph>)> =
        loaded.iter().map(|(n, g)| (*n, g.as_ref())).collect();
    let bio = datasets[0].1;
    println!(
        "acceptance: data directory {}",
        common::data_dir().display()
    );

    let secs = Duration::from_secs;
    let mut kept = Vec::new();
    let mut lines = Vec::new();
    let mut run = |c: Criterion, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let mut out = f();
        let elapsed = start.elapsed();
        if elapsed > c.budget && out.status != Status::NotRun {
            out.status = Status::Fail;
            out.detail
                .push_str(&format!("; over the {:?} budget", c.budget));
        }
        println!(
            "criterion {:>2} [{}] {} ({:.2}s): {}",
            c.id,
            out.status,
            c.name,
            elapsed.as_secs_f64(),
            out.detail
        );
        lines.push(out.status);
    };

    let crit = |id, name, budget| Criterion { id, name, budget };
    run(crit(1, "running example exactness", secs(1)), &mut || {
        c1_running_example(&mut kept)
    });
    run(crit(2, "reach bitmap trace", secs(1)), &mut c2_trace);
    run(crit(3, "oracle differential suite", secs(120)), &mut || {
        c3_differential(&mut kept)
    });
    run(
        crit(4, "observation and theorem campaign", secs(300)),
        &mut c4_observations,
    );
    run(
        crit(5, "classic core agreement on datasets", secs(240)),
        &mut || c5_classic(&datasets),
    );
    run(crit(6, "sampling degeneration", secs(600)), &mut || {
        c6_degeneration(bio)
    });
    run(crit(7, "sampling accuracy", secs(600)), &mut || {
        c7_accuracy(bio)
    });
    run(crit(8, "parallel determinism", secs(1800)), &mut || {
        c8_threads(bio)
    });
    run(
        crit(9, "bitmap speedup over baseline", secs(1800)),
        &mut || c9_performance(bio),
    );
    run(
        crit(10, "nesting and core validity", secs(600)),
        &mut || c10_nesting(&kept),
    );

    let failed = lines.iter().filter(|&&s| s == Status::Fail).count();
    let incomplete = lines
        .iter()
        .filter(|&&s| matches!(s, Status::NotRun | Status::Partial))
        .count();
    println!(
        "acceptance: {} passed, {failed} failed, {incomplete} not fully run",
        lines.iter().filter(|&&s| s == Status::Pass).count()
    );
    if failed > 0 || (require && incomplete > 0) {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
