use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nucleus::error::{Error, EXIT_CHECK_FAILED, EXIT_USAGE};
use nucleus::pipeline::{self, Decomposition};
use nucleus::validate::{self, Report};
use nucleus::{edgelist, export, random};
use nucleus_core::clique::DEFAULT_MEMORY_BUDGET;
use nucleus_core::graph::LabeledGraph;
use nucleus_core::metrics::{self, DEFAULT_BINS};
use nucleus_core::oracle::ORACLE_LIMIT;
use nucleus_core::peel::{InvariantCheck, PeelOptions, Strategy, TieBreak};
use nucleus_core::ForestView;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "nucleus",
    version,
    about = "(r,s)-nucleus decomposition of undirected graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write κ of every r-clique as CSV and a JSON run summary.
    Decompose(RunArgs),
    /// Write the size-filtered nucleus forest as JSON or DOT.
    Forest(RunArgs),
    /// Write density_histogram.csv, size_density.csv and overlaps.csv into
    /// the output directory.
    Metrics(RunArgs),
    /// Check the engine against the exhaustive oracle on a small graph.
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Access {
    Auto,
    OnDemand,
    Materialized,
}

impl From<Access> for Strategy {
    fn from(a: Access) -> Strategy {
        match a {
            Access::Auto => Strategy::Auto,
            Access::OnDemand => Strategy::OnDemand,
            Access::Materialized => Strategy::Materialized,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    s: usize,
    /// Smallest nucleus (in vertices) kept in forest and metrics output.
    #[arg(long, default_value_t = 10)]
    min_size: usize,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output file (decompose, forest) or directory (metrics).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Include vertex lists in forest JSON.
    #[arg(long)]
    vertices: bool,
    #[arg(long, default_value_t = DEFAULT_MEMORY_BUDGET)]
    memory_budget: u64,
    /// Use a seeded random tie-break among equal-δ cliques.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Access::Auto)]
    strategy: Access,
    /// Keep out-degree-1 chains in forest output.
    #[arg(long)]
    no_contract: bool,
    #[arg(long, default_value_t = DEFAULT_BINS)]
    bins: usize,
    #[arg(long, default_value_t = 1)]
    min_overlap: usize,
    /// Recount δ at every transition for every n-th clique (1 checks all).
    #[arg(long)]
    check_stride: Option<usize>,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long, required_unless_present = "random", conflicts_with = "random")]
    input: Option<PathBuf>,
    /// Check only this pair (requires --s).
    #[arg(long, requires = "s")]
    r: Option<usize>,
    #[arg(long, requires = "r")]
    s: Option<usize>,
    /// Generate TRIALS random G(N, P) graphs instead of reading a file.
    #[arg(long, num_args = 3, value_names = ["N", "P", "TRIALS"])]
    random: Option<Vec<String>>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Serialize)]
struct Summary {
    n: usize,
    m: usize,
    r: usize,
    s: usize,
    ct_r: usize,
    max_kappa: u32,
    nuclei: usize,
    strategy: &'static str,
    predictor: u64,
    predictor_saturated: bool,
    seconds: f64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE as u8),
            };
        }
    };
    let result = match cli.command {
        Command::Decompose(args) => decompose(&args),
        Command::Forest(args) => forest(&args),
        Command::Metrics(args) => metrics_cmd(&args),
        Command::Validate(args) => validate_cmd(&args),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("nucleus: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn load(path: &Path) -> Result<LabeledGraph, Error> {
    let lg = edgelist::read_path(path)?;
    let st = lg.stats;
    if st.self_loops > 0 || st.duplicates > 0 {
        eprintln!(
            "nucleus: dropped {} self-loops and {} duplicate edges",
            st.self_loops, st.duplicates
        );
    }
    Ok(lg)
}

fn run(args: &RunArgs) -> Result<Decomposition, Error> {
    if args.min_size == 0 {
        return Err(Error::Usage("--min-size must be at least 1".into()));
    }
    let check = match args.check_stride {
        None => InvariantCheck::Off,
        Some(0) => return Err(Error::Usage("--check-stride must be at least 1".into())),
        Some(1) => InvariantCheck::Full,
        Some(stride) => InvariantCheck::Sampled { stride },
    };
    let opts = PeelOptions {
        strategy: args.strategy.into(),
        tie_break: args.seed.map_or(TieBreak::BinOrder, TieBreak::Seeded),
        check,
        memory_budget: args.memory_budget,
    };
    let lg = load(&args.input)?;
    Ok(pipeline::decompose(lg, args.r, args.s, &opts)?)
}

fn create(path: &Path) -> Result<BufWriter<File>, Error> {
    File::create(path).map(BufWriter::new).map_err(|e| Error::io(path, e))
}

/// Runs `body` against the output file, or stdout when there is none.
fn with_output<F>(output: Option<&Path>, body: F) -> Result<(), Error>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match output {
        Some(path) => {
            let mut out = create(path)?;
            body(&mut out).and_then(|_| out.flush()).map_err(|e| Error::io(path, e))
        }
        None => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            body(&mut out)
                .and_then(|_| out.flush())
                .map_err(|e| Error::io("<stdout>", e))
        }
    }
}

fn decompose(args: &RunArgs) -> Result<i32, Error> {
    if matches!(args.format, Some(Format::Json | Format::Dot)) {
        return Err(Error::Usage("decompose writes CSV only".into()));
    }
    let d = run(args)?;
    let predictor = d.predictor()?;
    with_output(args.output.as_deref(), |out| {
        export::write_kappa_csv(out, &d.cliques, &d.kappa, &d.labels)
    })?;
    let summary = Summary {
        n: d.graph.vertex_count(),
        m: d.graph.edge_count(),
        r: args.r,
        s: args.s,
        ct_r: d.cliques.len(),
        max_kappa: d.kappa.max_kappa,
        nuclei: d.forest.len(),
        strategy: pipeline::strategy_name(d.materialized),
        predictor: predictor.value,
        predictor_saturated: predictor.saturated,
        seconds: d.seconds,
    };
    let json = serde_json::to_string(&summary).expect("summary serializes");
    if args.output.is_some() {
        println!("{json}");
    } else {
        eprintln!("{json}");
    }
    Ok(0)
}

fn forest_view(d: &Decomposition, args: &RunArgs) -> Result<ForestView, Error> {
    let view = d.forest.filter_by_size(args.min_size)?;
    Ok(if args.no_contract { view } else { view.contract_chains() })
}

fn forest(args: &RunArgs) -> Result<i32, Error> {
    let format = args.format.unwrap_or(Format::Json);
    if format == Format::Csv {
        return Err(Error::Usage("forest writes json or dot".into()));
    }
    let d = run(args)?;
    let view = forest_view(&d, args)?;
    let labels = args.vertices.then_some(d.labels.as_slice());
    with_output(args.output.as_deref(), |out| match format {
        Format::Dot => export::write_forest_dot(out, &d.forest, &view),
        _ => export::write_forest_json(out, &d.forest, &view, labels),
    })?;
    Ok(0)
}

fn metrics_cmd(args: &RunArgs) -> Result<i32, Error> {
    if matches!(args.format, Some(Format::Json | Format::Dot)) {
        return Err(Error::Usage("metrics writes CSV only".into()));
    }
    let dir = args
        .output
        .as_deref()
        .ok_or_else(|| Error::Usage("metrics needs --output DIR".into()))?;
    let d = run(args)?;
    let view = d.forest.filter_by_size(args.min_size)?;
    let hist = metrics::density_histogram(&d.forest, &view, args.bins)?;
    let scatter = metrics::size_density_scatter(&d.forest, &view);
    let overlaps = metrics::overlap_analysis(&d.forest, &view, args.min_overlap)?;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let path = dir.join("density_histogram.csv");
    with_output(Some(&path), |out| export::write_histogram_csv(out, &hist))?;
    let path = dir.join("size_density.csv");
    with_output(Some(&path), |out| export::write_scatter_csv(out, &scatter))?;
    let path = dir.join("overlaps.csv");
    with_output(Some(&path), |out| export::write_overlaps_csv(out, &overlaps))?;
    Ok(0)
}

fn parse_random(values: &[String]) -> Result<(usize, f64, usize), Error> {
    let bad = |what: &str, v: &str| Error::Usage(format!("--random: invalid {what} {v:?}"));
    let n: usize = values[0].parse().map_err(|_| bad("vertex count", &values[0]))?;
    let p: f64 = values[1].parse().map_err(|_| bad("probability", &values[1]))?;
    let trials: usize = values[2].parse().map_err(|_| bad("trial count", &values[2]))?;
    if !(0.0..=1.0).contains(&p) {
        return Err(bad("probability", &values[1]));
    }
    if n > ORACLE_LIMIT {
        return Err(nucleus_core::Error::OracleTooLarge { n, limit: ORACLE_LIMIT }.into());
    }
    Ok((n, p, trials))
}

fn validate_cmd(args: &ValidateArgs) -> Result<i32, Error> {
    let pairs: Vec<(usize, usize)> = match (args.r, args.s) {
        (Some(r), Some(s)) => {
            if !(1 <= r && r < s && s <= nucleus_core::MAX_CLIQUE) {
                return Err(nucleus_core::Error::UnsupportedPair { r, s }.into());
            }
            vec![(r, s)]
        }
        _ => validate::PAIRS.to_vec(),
    };
    let mut report = Report::default();
    if let Some(values) = &args.random {
        let (n, p, trials) = parse_random(values)?;
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        for t in 0..trials {
            let g = random::gnp(n, p, &mut rng);
            validate::validate_graph(&g, &pairs, &format!("trial {t}"), args.seed, &mut report)?;
        }
    } else if let Some(path) = &args.input {
        let lg = load(path)?;
        validate::validate_graph(&lg.graph, &pairs, "input", args.seed, &mut report)?;
    }
    for line in report.lines() {
        println!("{line}");
    }
    let total = report.checks.len();
    let failed = report.failures();
    println!("{} of {total} checks passed", total - failed);
    Ok(if report.passed() { 0 } else { EXIT_CHECK_FAILED })
}
