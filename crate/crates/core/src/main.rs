use std::fs::File;
use std::io::{BufReader, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sofia::measures::{robustness_bounds, stability_bounds};
use sofia::oracle::{check_guard, enumerate_closed, postprune_topk};
use sofia::projection::build_chain;
use sofia::sofia::projected_measure;
use sofia::{BinaryDataset, ChainPolicy, Error, MeasureKind, PatternEntry, ProjectionChain};

#[derive(Parser)]
#[command(name = "sofia", about = "Exact top-quality closed itemset mining", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// FIMI .dat input file
    #[arg(long, short = 'i')]
    input: PathBuf,

    /// Quality measure: delta | cosine | support
    #[arg(long, short = 'm', default_value = "delta")]
    measure: MeasureKind,

    /// Chain policy: ascending_support | descending_support | input_order
    #[arg(long, default_value = "ascending_support")]
    order: ChainPolicy,

    /// Transaction retention probability for robustness bounds
    #[arg(long, default_value_t = 0.9)]
    alpha: f64,

    /// Append stability/robustness bound columns to each row
    #[arg(long)]
    with_bounds: bool,

    /// Output file (standard output when omitted)
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Adaptive top-L mining: auto-adjusts the threshold so at most L
    /// patterns are kept at any step
    Mine {
        #[command(flatten)]
        common: CommonOpts,
        /// Maximum number of retained patterns
        #[arg(short = 'L', long = "limit")]
        limit: usize,
        /// Initial threshold
        #[arg(long, default_value_t = 0.0)]
        theta_min: f64,
    },
    /// Fixed-threshold mining: all closed patterns with measure > theta
    MineTheta {
        #[command(flatten)]
        common: CommonOpts,
        /// Measure threshold (strict)
        #[arg(long)]
        theta: f64,
    },
    /// Enumerate-all-then-prune baseline (small datasets)
    Baseline {
        #[command(flatten)]
        common: CommonOpts,
        /// Number of best patterns to keep (tie groups pruned whole)
        #[arg(short = 'L', long = "limit")]
        limit: usize,
    },
    /// Score every closed pattern of the dataset
    Measures {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Scaling benchmark over transaction-sample fractions
    Bench {
        #[command(flatten)]
        common: CommonOpts,
        /// Maximum number of retained patterns per run
        #[arg(short = 'L', long = "limit", default_value_t = 1000)]
        limit: usize,
        /// Comma-separated sample fractions in (0, 1]
        #[arg(long, default_value = "0.25,0.5,0.75,1.0", value_delimiter = ',')]
        sample_fractions: Vec<f64>,
        /// Timed repetitions per fraction (distinct permutations)
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        /// Permutation seed
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NonIntegerToken { .. } | Error::NoTransactions | Error::Io(_) => 1,
        Error::OracleGuard(..) => 3,
        _ => 2,
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(exit_code(&err));
    }
}

fn run(cli: Cli) -> sofia::Result<()> {
    match cli.command {
        Command::Mine { common, limit, theta_min } => {
            let (ds, chain) = load(&common)?;
            let start = Instant::now();
            let result = sofia::sofia(&ds, &chain, common.measure, limit, theta_min)?;
            emit(&common, &ds, &chain, result.patterns, result.theta_final, start)
        }
        Command::MineTheta { common, theta } => {
            let (ds, chain) = load(&common)?;
            let start = Instant::now();
            let result = sofia::theta_sofia(&ds, &chain, common.measure, theta)?;
            emit(&common, &ds, &chain, result.patterns, result.theta_final, start)
        }
        Command::Baseline { common, limit } => {
            let (ds, chain) = load(&common)?;
            let start = Instant::now();
            let (theta, patterns) = postprune_topk(&ds, common.measure, limit)?;
            emit(&common, &ds, &chain, patterns, theta, start)
        }
        Command::Measures { common } => {
            let (ds, chain) = load(&common)?;
            check_guard(&ds)?;
            let start = Instant::now();
            let full = chain.len();
            let patterns: Vec<PatternEntry> = enumerate_closed(&ds, 1)
                .into_iter()
                .map(|(e, _)| {
                    let measure = projected_measure(&ds, &chain, full, &e, common.measure);
                    let support = e.cardinality();
                    PatternEntry { extent: e, measure, support }
                })
                .collect();
            emit(&common, &ds, &chain, patterns, 0.0, start)
        }
        Command::Bench { common, limit, sample_fractions, repeats, seed } => {
            bench(&common, limit, &sample_fractions, repeats, seed)
        }
    }
}

fn load(common: &CommonOpts) -> sofia::Result<(BinaryDataset, ProjectionChain)> {
    let file = File::open(&common.input)?;
    let ds = BinaryDataset::parse_fimi(BufReader::new(file))?;
    if !(0.0..=1.0).contains(&common.alpha) {
        return Err(Error::AlphaOutOfRange(common.alpha));
    }
    let chain = build_chain(&ds, common.order);
    Ok((ds, chain))
}

fn fmt_value(v: f64) -> String {
    if v.is_infinite() {
        "inf".to_string()
    } else if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

fn emit(
    common: &CommonOpts,
    ds: &BinaryDataset,
    chain: &ProjectionChain,
    patterns: Vec<PatternEntry>,
    theta_final: f64,
    start: Instant,
) -> sofia::Result<()> {
    let all = ds.all_items();
    let mut rows: Vec<(Vec<u64>, usize, f64, String)> = Vec::with_capacity(patterns.len());
    for p in &patterns {
        let mut intent: Vec<u64> = ds
            .intent(&p.extent, &all)
            .iter()
            .map(|i| ds.external_id(i))
            .collect();
        intent.sort_unstable();
        let mut extra = String::new();
        if common.with_bounds {
            let k = chain.len();
            let stab = stability_bounds(ds, chain, k, &p.extent);
            let rbst = robustness_bounds(ds, chain, k, &p.extent, common.alpha)?;
            extra = format!(
                "\t{:.6}\t{:.6}\t{:.6}\t{:.6}",
                stab.lower, stab.upper, rbst.lower, rbst.upper
            );
        }
        rows.push((intent, p.support, p.measure, extra));
    }
    rows.sort_by(|a, b| {
        b.2.total_cmp(&a.2)
            .then(b.1.cmp(&a.1))
            .then(a.0.cmp(&b.0))
    });

    let mut out = String::new();
    for (intent, support, measure, extra) in &rows {
        let intent_str = intent
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!(
            "{intent_str}\t{support}\t{}{extra}\n",
            fmt_value(*measure)
        ));
    }
    out.push_str(&format!(
        "# theta_final={} patterns={} elapsed_ms={}\n",
        fmt_value(theta_final),
        rows.len(),
        start.elapsed().as_millis()
    ));
    write_output(common, &out)
}

fn write_output(common: &CommonOpts, text: &str) -> sofia::Result<()> {
    match &common.output {
        Some(path) => {
            let mut f = File::create(path)?;
            f.write_all(text.as_bytes())?;
        }
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn bench(
    common: &CommonOpts,
    limit: usize,
    fractions: &[f64],
    repeats: usize,
    seed: u64,
) -> sofia::Result<()> {
    let (ds, _) = load(common)?;
    let n = ds.n_transactions();
    let start = Instant::now();
    let mut out = String::new();
    let mut means: Vec<(f64, f64)> = Vec::new();

    for &fraction in fractions {
        let take = ((fraction * n as f64).ceil() as usize).clamp(1, n);
        let mut times_ms: Vec<f64> = Vec::with_capacity(repeats);
        for rep in 0..repeats {
            let mut tids: Vec<usize> = (0..n).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(rep as u64));
            tids.shuffle(&mut rng);
            tids.truncate(take);
            let sub = ds.select_transactions(&tids);
            let chain = build_chain(&sub, common.order);
            let t0 = Instant::now();
            sofia::sofia(&sub, &chain, common.measure, limit, 0.0)?;
            times_ms.push(t0.elapsed().as_secs_f64() * 1000.0);
        }
        let mean = times_ms.iter().sum::<f64>() / times_ms.len() as f64;
        let var = times_ms.iter().map(|t| (t - mean).powi(2)).sum::<f64>()
            / times_ms.len() as f64;
        means.push((fraction, mean));
        out.push_str(&format!("{fraction}\t{mean:.3}\t{:.3}\n", var.sqrt()));
    }

    let at = |f: f64| means.iter().find(|(fr, _)| (*fr - f).abs() < 1e-12).map(|(_, m)| *m);
    if let (Some(full), Some(half)) = (at(1.0), at(0.5)) {
        if half > 0.0 {
            out.push_str(&format!("# ratio_1.0_over_0.5={:.3}\n", full / half));
        }
    }
    out.push_str(&format!(
        "# repeats={repeats} seed={seed} L={limit} elapsed_ms={}\n",
        start.elapsed().as_millis()
    ));
    write_output(common, &out)
}
