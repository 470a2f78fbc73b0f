//! Command-line front end: `compute`, `generate` and `experiment`.
//!
//! Exit codes: 0 on success, 2 for invalid input or parameters, 3 when a
//! computation fails.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::centrality::{compute_many, ComputeOptions, Engine, Metric, Weighting};
use crate::error::{Error, Result};
use crate::experiments::{self, ExperimentGrid};
use crate::generators::{assign_relevance, ring_lattice, watts_strogatz, GeneratorConfig};
use crate::io::{self, ResultDocument};
use crate::relevance::{RelevanceFunction, RelevanceVector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_COMPUTE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "relcent", version, about = "Relevance-embedded centrality metrics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute centrality metrics for a graph.
    Compute(ComputeArgs),
    /// Generate a ring lattice or Watts–Strogatz graph with random relevance.
    Generate(GenerateArgs),
    /// Run a classic-vs-extended correlation grid.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Degree,
    Harmonic,
    Betweenness,
    EdgeBetweenness,
    All,
}

impl MetricArg {
    fn metrics(self) -> Vec<Metric> {
        match self {
            MetricArg::Degree => vec![Metric::Degree],
            MetricArg::Harmonic => vec![Metric::Harmonic],
            MetricArg::Betweenness => vec![Metric::VertexBetweenness],
            MetricArg::EdgeBetweenness => vec![Metric::EdgeBetweenness],
            MetricArg::All => Metric::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Fast,
    Oracle,
}

#[derive(Debug, clap::Args)]
pub struct ComputeArgs {
    /// Edge CSV (`source,target[,weight]`).
    pub edges: PathBuf,
    /// Relevance CSV (`vertex,relevance`). Omitted: every vertex has relevance 1.
    pub relevance: Option<PathBuf>,
    /// Relevance function: product, mean, source, max, path-sum, path-prod or
    /// matrix:<path>. Defaults to product when a relevance file is given and
    /// to the classic metrics otherwise.
    #[arg(long = "f")]
    pub function: Option<String>,
    #[arg(long, value_enum, default_value = "all")]
    pub metric: MetricArg,
    /// Output file. Without it only the ranking is printed.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long, value_enum, default_value = "fast")]
    pub engine: EngineArg,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    pub workers: Option<usize>,
    /// Graph name recorded in the output (default: edge file stem).
    #[arg(long)]
    pub name: Option<String>,
    /// Number of ranked elements printed per metric.
    #[arg(long, default_value_t = 10)]
    pub top: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Ring,
    Ws,
}

#[derive(Debug, clap::Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long)]
    pub n: usize,
    /// Even mean degree; also the width of the relevance range 1 + U(0, d).
    #[arg(long, default_value_t = 10)]
    pub d: usize,
    /// Rewiring probability (ws only).
    #[arg(long, default_value_t = 0.0)]
    pub p: f64,
    /// Fraction of vertices with random relevance.
    #[arg(long, default_value_t = 0.0)]
    pub r: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Writes `<prefix>.edges.csv` and `<prefix>.relevance.csv`.
    #[arg(long)]
    pub out_prefix: PathBuf,
}

#[derive(Debug, clap::Args)]
pub struct ExperimentArgs {
    /// TOML grid; missing keys take the default grid values.
    #[arg(long)]
    pub grid: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub workers: Option<usize>,
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return if code == 0 { EXIT_OK } else { EXIT_INPUT };
        }
    };
    let result = match cli.command {
        Command::Compute(args) => cmd_compute(&args, stdout, stderr),
        Command::Generate(args) => cmd_generate(&args),
        Command::Experiment(args) => cmd_experiment(&args, stderr),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_input_error() {
                EXIT_INPUT
            } else {
                EXIT_COMPUTE
            }
        }
    }
}

fn resolve_function(selector: &str, graph: &crate::Graph) -> Result<RelevanceFunction> {
    match selector.strip_prefix("matrix:") {
        Some(path) => {
            let f = RelevanceFunction::matrix(io::load_f_matrix_csv(Path::new(path), graph)?);
            f.validate(Some(graph.vertex_count()))?;
            Ok(f)
        }
        None => selector.parse(),
    }
}

fn write_output(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

pub fn cmd_compute(args: &ComputeArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let graph = io::load_graph(&args.edges)?;
    let relevance = match &args.relevance {
        Some(path) => io::load_relevance_csv(path, &graph)?,
        None => RelevanceVector::ones(graph.vertex_count()),
    };
    let selector = match (&args.function, &args.relevance) {
        (Some(s), _) => Some(s.as_str()),
        (None, Some(_)) => Some("product"),
        (None, None) => None,
    };
    let function = selector.map(|s| resolve_function(s, &graph)).transpose()?;
    let weighting = match &function {
        Some(f) => Weighting::relevance(&relevance, f),
        None => Weighting::Classic,
    };

    let mut metrics = args.metric.metrics();
    if args.metric == MetricArg::All && function.as_ref().is_some_and(|f| f.is_path_dependent()) {
        metrics.retain(|&m| m != Metric::Degree);
        let _ = writeln!(stderr, "note: degree skipped, path-dependent functions do not apply to it");
    }
    let opts = ComputeOptions {
        workers: args.workers,
        engine: match args.engine {
            EngineArg::Fast => Engine::Fast,
            EngineArg::Oracle => Engine::Oracle,
        },
    };
    let reports = compute_many(&graph, &metrics, weighting, &opts)?;

    for rep in &reports {
        let _ = writeln!(stdout, "# {} (f={})", rep.metric, rep.function);
        for (pos, (label, value)) in rep.top(&graph, args.top).into_iter().enumerate() {
            let _ = writeln!(
                stdout,
                "{}\t{label}\t{}",
                pos + 1,
                crate::centrality::round_significant(value)
            );
        }
    }

    if let Some(out) = &args.out {
        let doc = ResultDocument {
            graph_name: args.name.clone().unwrap_or_else(|| {
                args.edges
                    .file_stem()
                    .map(|s| s.to_string_lossy().trim_end_matches(".edges").to_owned())
                    .unwrap_or_default()
            }),
            function: weighting.function_name().to_owned(),
            relevance_source: args
                .relevance
                .as_ref()
                .map_or_else(|| "unit".to_owned(), |p| p.display().to_string()),
            engine: match opts.engine {
                Engine::Fast => "fast",
                Engine::Oracle => "oracle",
            }
            .to_owned(),
            graph: &graph,
            reports,
        };
        let bytes = match args.format {
            Format::Json => doc.to_json()?,
            Format::Csv => doc.to_csv().into_bytes(),
            Format::Dot => doc.to_dot().into_bytes(),
        };
        write_output(out, &bytes)?;
    }
    Ok(())
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<()> {
    let cfg = GeneratorConfig {
        n: args.n,
        d: args.d,
        p: args.p,
        r: args.r,
        seed: args.seed,
    };
    cfg.validate()?;
    let graph = match args.kind {
        Kind::Ring => ring_lattice(cfg.n, cfg.d)?,
        Kind::Ws => watts_strogatz(&cfg)?,
    };
    let relevance = assign_relevance(
        cfg.n,
        cfg.d as f64,
        cfg.r,
        experiments::relevance_seed(cfg.seed),
    )?;
    io::save_edge_csv(&graph, &with_suffix(&args.out_prefix, ".edges.csv"))?;
    io::save_relevance_csv(&graph, &relevance, &with_suffix(&args.out_prefix, ".relevance.csv"))
}

pub fn cmd_experiment(args: &ExperimentArgs, stderr: &mut dyn Write) -> Result<()> {
    let grid = match &args.grid {
        Some(path) => ExperimentGrid::load(path)?,
        None => ExperimentGrid::default(),
    };
    let _ = writeln!(
        stderr,
        "running {} cells x {} seeds",
        grid.cell_count(),
        grid.seeds.len()
    );
    let opts = ComputeOptions {
        workers: args.workers,
        engine: Engine::Fast,
    };
    let records = experiments::run_grid(&grid, &opts)?;
    let mut buf = Vec::new();
    experiments::write_csv(&records, &mut buf)?;
    write_output(&args.out, &buf)
}
