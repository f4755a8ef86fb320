use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{error::ErrorKind, CommandFactory, Parser, Subcommand, ValueEnum};
use khcore::metrics::{precision_of, top_s_precision_of};
use khcore::oracle::{brute_core_numbers, check_observations};
use khcore::output::{align_cores, read_cores, write_cores, Summary};
use khcore::{
    gnp, load_edge_list, peel_baseline, peel_khcore, peel_parallel, peel_sample, Algorithm,
    CoreResult, Graph, LoadOptions, ParallelConfig, UpdateVariant,
};
use rand::{Rng, SeedableRng};

#[derive(Parser)]
#[command(
    name = "khcore",
    version,
    about = "Distance-generalized (k,h)-core decomposition"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute core numbers of a graph.
    Decompose(DecomposeArgs),
    /// Compare an estimated core file against an exact one.
    Precision(PrecisionArgs),
    /// Check the decomposition against brute-force references.
    Verify(VerifyArgs),
    /// Time algorithms over a grid of settings.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Algo {
    Baseline,
    Khcore,
    KhcoreBitmap,
    Sample,
}

#[derive(clap::Args)]
struct DecomposeArgs {
    /// Edge list, one `u v` pair per line.
    #[arg(long)]
    input: PathBuf,
    /// Hop bound.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    h: u32,
    #[arg(long, value_enum, default_value = "khcore-bitmap")]
    algo: Algo,
    /// Sampling rate in (0, 1]; only with `--algo sample`.
    #[arg(long)]
    rate: Option<f64>,
    /// Seed for the sample; a random one is chosen and printed if omitted.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Core file to write; standard output if omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Summary file to write; standard error if omitted.
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(clap::Args)]
struct PrecisionArgs {
    #[arg(long)]
    exact: PathBuf,
    #[arg(long)]
    estimate: PathBuf,
    /// Also report precision over the top-s cores; needs `--input`.
    #[arg(long, requires = "input")]
    top_s: Option<usize>,
    /// The graph both files were computed on.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 2000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Check this graph instead of random ones.
    #[arg(long, conflicts_with = "fixture")]
    input: Option<PathBuf>,
    /// Check the built-in 14-vertex example graph.
    #[arg(long)]
    fixture: bool,
}

#[derive(clap::Args)]
struct BenchArgs {
    #[arg(long, required_unless_present = "gnp")]
    input: Option<PathBuf>,
    /// Random graph `N,P` instead of an input file.
    #[arg(long, value_parser = parse_gnp)]
    gnp: Option<(usize, f64)>,
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "baseline,khcore,khcore-bitmap"
    )]
    algos: Vec<Algo>,
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    hs: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    threads: Vec<usize>,
    /// Rates tried for `sample`.
    #[arg(long, value_delimiter = ',', default_value = "0.1")]
    rates: Vec<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    repeats: usize,
}

fn parse_gnp(s: &str) -> Result<(usize, f64), String> {
    let (n, p) = s.split_once(',').ok_or("expected N,P")?;
    let n = n
        .trim()
        .parse()
        .map_err(|_| format!("bad vertex count {n:?}"))?;
    let p = p
        .trim()
        .parse()
        .map_err(|_| format!("bad probability {p:?}"))?;
    Ok((n, p))
}

fn load_graph(path: &Path) -> Result<Graph> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let options = LoadOptions {
        skip_data_lines: usize::from(path.extension().is_some_and(|e| e == "mtx")),
        ..LoadOptions::default()
    };
    load_edge_list(BufReader::new(file), &options)
        .with_context(|| format!("reading {}", path.display()))
}

fn run_algo(g: &Graph, h: u32, algorithm: Algorithm, threads: usize) -> Result<CoreResult> {
    let result = if threads > 1 {
        peel_parallel(g, h, algorithm, ParallelConfig::new(threads)?)?
    } else {
        match algorithm {
            Algorithm::Baseline => peel_baseline(g, h)?,
            Algorithm::KhCore(variant) => peel_khcore(g, h, variant)?,
            Algorithm::Sample { rate, seed } => peel_sample(g, h, rate, seed)?,
            other => bail!("{other} is not a decomposition choice"),
        }
    };
    Ok(result)
}

fn algorithm(algo: Algo, rate: f64, seed: u64) -> Algorithm {
    match algo {
        Algo::Baseline => Algorithm::Baseline,
        Algo::Khcore => Algorithm::KhCore(UpdateVariant::SetBased),
        Algo::KhcoreBitmap => Algorithm::KhCore(UpdateVariant::Bitmap),
        Algo::Sample => Algorithm::Sample { rate, seed },
    }
}

fn usage_error(kind: ErrorKind, message: &str) -> ! {
    Cli::command().error(kind, message).exit()
}

fn decompose(args: DecomposeArgs) -> Result<()> {
    if args.algo != Algo::Sample && args.rate.is_some() {
        usage_error(
            ErrorKind::ArgumentConflict,
            "--rate only applies to --algo sample",
        );
    }
    if args.threads == 0 {
        usage_error(ErrorKind::InvalidValue, "--threads must be at least 1");
    }
    let rate = match (args.algo, args.rate) {
        (Algo::Sample, None) => usage_error(
            ErrorKind::MissingRequiredArgument,
            "--algo sample needs --rate",
        ),
        (_, rate) => rate.unwrap_or(1.0),
    };
    let seed = match args.seed {
        Some(s) => s,
        None if args.algo == Algo::Sample => {
            let s = rand::rng().random();
            eprintln!("seed={s}");
            s
        }
        None => 0,
    };

    let g = load_graph(&args.input)?;
    let result = run_algo(&g, args.h, algorithm(args.algo, rate, seed), args.threads)?;

    match &args.output {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_cores(BufWriter::new(file), &g, &result.core)?;
        }
        None => write_cores(BufWriter::new(io::stdout().lock()), &g, &result.core)?,
    }
    let summary = Summary::new(&g, &result, args.threads).to_string();
    match &args.summary {
        Some(path) => {
            std::fs::write(path, summary).with_context(|| format!("writing {}", path.display()))?
        }
        None => eprint!("{summary}"),
    }
    Ok(())
}

fn read_core_file(path: &Path) -> Result<Vec<(u64, u32)>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_cores(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))
}

fn precision_cmd(args: PrecisionArgs) -> Result<()> {
    let (labels, exact, est) = align_cores(
        &read_core_file(&args.exact)?,
        &read_core_file(&args.estimate)?,
    )?;
    let mut out = io::stdout().lock();
    write!(out, "{}", precision_of(&exact, &est)?.to_kv())?;
    if let Some(s) = args.top_s {
        if s == 0 {
            usage_error(ErrorKind::InvalidValue, "--top-s must be at least 1");
        }
        let g = load_graph(args.input.as_deref().expect("clap enforces --input"))?;
        if g.vertex_count() != labels.len() {
            bail!(
                "graph has {} vertices but the core files list {}",
                g.vertex_count(),
                labels.len()
            );
        }
        // reorder from label order to dense ids
        let mut by_id_exact = vec![0; labels.len()];
        let mut by_id_est = vec![0; labels.len()];
        for (i, &label) in labels.iter().enumerate() {
            let v = g
                .dense_id(label)
                .with_context(|| format!("label {label} is not in the graph"))?
                as usize;
            by_id_exact[v] = exact[i];
            by_id_est[v] = est[i];
        }
        let report = top_s_precision_of(&by_id_exact, &by_id_est, &g, s)?;
        writeln!(out, "top_s_precision={:.6}", report.precision)?;
        writeln!(out, "top_s_vertex_count={}", report.vertex_count)?;
    }
    Ok(())
}

/// Runs every exact driver and the brute-force reference; returns the
/// number of disagreements.
fn differential(g: &Graph, h: u32) -> Result<usize> {
    let want = brute_core_numbers(g, h).core;
    let mut bad = 0;
    for algo in [
        Algorithm::Baseline,
        Algorithm::KhCore(UpdateVariant::SetBased),
        Algorithm::KhCore(UpdateVariant::Bitmap),
        Algorithm::Sample { rate: 1.0, seed: 0 },
    ] {
        if run_algo(g, h, algo, 1)?.core != want {
            eprintln!("{algo} disagrees with brute force at h={h}");
            bad += 1;
        }
    }
    Ok(bad)
}

fn verify(args: VerifyArgs) -> Result<bool> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed);
    let mut failures = 0;
    let mut observation_trials = 0;
    let mut differential_runs = 0;

    let fixed = if args.fixture {
        Some(khcore::fixtures::running_example().0)
    } else {
        args.input.as_deref().map(load_graph).transpose()?
    };

    match fixed {
        Some(g) => {
            for _ in 0..args.trials {
                let v = rng.random_range(0..g.vertex_count() as u32);
                let h = rng.random_range(1..=4);
                let report = check_observations(&g, v, h);
                observation_trials += 1;
                if !report.passed() {
                    eprint!("{report}");
                    failures += 1;
                }
            }
            if g.vertex_count() <= 2000 {
                for h in 1..=4 {
                    failures += differential(&g, h)?;
                    differential_runs += 1;
                }
            }
        }
        None => {
            for trial in 0..args.trials {
                let n = rng.random_range(5..=40);
                let p = rng.random_range(0.05..=0.3);
                let g = gnp(n, p, rng.random());
                let v = rng.random_range(0..n as u32);
                let h = rng.random_range(1..=4);
                let report = check_observations(&g, v, h);
                observation_trials += 1;
                if !report.passed() {
                    eprint!("{report}");
                    failures += 1;
                }
                if trial % 10 == 0 {
                    failures += differential(&g, h)?;
                    differential_runs += 1;
                }
            }
        }
    }
    println!("observation_trials={observation_trials}");
    println!("differential_runs={differential_runs}");
    println!("failures={failures}");
    Ok(failures == 0)
}

fn bench(args: BenchArgs) -> Result<()> {
    let g = match (&args.input, args.gnp) {
        (Some(path), _) => load_graph(path)?,
        (None, Some((n, p))) => gnp(n, p, args.seed),
        (None, None) => unreachable!("clap requires one of them"),
    };
    let mut out = io::stdout().lock();
    writeln!(out, "algorithm\th\tt\tr\telapsed_ms\tk_max_h")?;
    for &algo in &args.algos {
        let rates: Vec<Option<f64>> = if algo == Algo::Sample {
            args.rates.iter().copied().map(Some).collect()
        } else {
            vec![None]
        };
        for &h in &args.hs {
            for &t in &args.threads {
                for &rate in &rates {
                    for _ in 0..args.repeats.max(1) {
                        let a = algorithm(algo, rate.unwrap_or(1.0), args.seed);
                        let r = run_algo(&g, h, a, t)?;
                        let rate = rate.map(|r| r.to_string()).unwrap_or_else(|| "-".into());
                        writeln!(
                            out,
                            "{a}\t{h}\t{t}\t{rate}\t{:.3}\t{}",
                            r.elapsed.as_secs_f64() * 1000.0,
                            r.k_max
                        )?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Decompose(args) => decompose(args).map(|_| true),
        Command::Precision(args) => precision_cmd(args).map(|_| true),
        Command::Verify(args) => verify(args),
        Command::Bench(args) => bench(args).map(|_| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
