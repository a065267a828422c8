//! Command-line front end. Exit codes: 0 success, 1 usage error, 2 runtime error.
//!
//! Files written with `--out` start with the run config as `#` lines (version
//! first); without `--out` results go to stdout bare. Runtimes go to stderr only,
//! so repeated runs produce identical files.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::experiments::{boundary_roughness, gradient_line, growth_comparison, twin_peaks_tree, TwinMode};
use crate::graph::{Graph, Vertex};
use crate::io::{
    labelings_to_text, parse_graph_spec, parse_labelings, parse_trace_csv, render_labeling_pgm, render_trace_pgm,
    trace_to_csv, RunConfig,
};
use crate::labeling::Labeling;
use crate::mcmc::{mcmc_conditioned, McmcConfig, DEFAULT_PROPOSAL_MIX};
use crate::oracle::{
    conditional_statistic_with, conditional_top_locations_with, enumerate_peak_counts_with, growth_vs_uniform_discrepancy,
    EnumerationOptions, EnumerationOrder, OutcomeKey, Statistic,
};
use crate::rng::RngStream;
use crate::samplers::{
    canonical_single_peak, eden_growth, random_two_peak_start, rejection_conditioned, sequential_growth_labeling,
    uniform_labeling,
};
use crate::tree::centroids;
use crate::tree_exact::{argmax_single_peak, regular_tree_size, sharpened_ratio_bound_check, single_peak_prob_at, twin_factor_products};

#[derive(Parser, Debug)]
#[command(name = "graph-peaks", version, about = "Random graph labelings conditioned on few peaks")]
struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a graph in edge-list format.
    GenGraph {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact tables by enumeration of all labelings.
    Enumerate(EnumerateArgs),
    /// Exact formulas on trees.
    ExactTree(ExactTreeArgs),
    /// Draw labelings or growth traces.
    Sample(SampleArgs),
    /// Run an experiment and write its report.
    Experiment(ExperimentArgs),
    /// Render a trace or labeling of a 2D lattice as a PGM heat map.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Table {
    Peaks,
    Top1,
    Top2,
    Statistic,
    Growth,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StatName {
    DistK1K2,
    MinDistToRoot,
    PeakLocation,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Order {
    Heap,
    Lex,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    graph: String,
    #[arg(long, value_enum, default_value = "peaks")]
    table: Table,
    #[arg(long, value_enum)]
    statistic: Option<StatName>,
    /// Peak count for `statistic` tables.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Pinned peak for `growth` tables.
    #[arg(long, default_value_t = 0)]
    pinned: Vertex,
    #[arg(long, value_enum, default_value = "heap")]
    order: Order,
    /// Allow 13 vertices (hours of work).
    #[arg(long)]
    allow_13: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TreeOp {
    SinglePeak,
    Centroids,
    TwinFactors,
    Sharpened,
    RegularSize,
}

#[derive(Args, Debug)]
struct ExactTreeArgs {
    #[arg(long, value_enum)]
    op: TreeOp,
    #[arg(long)]
    graph: Option<String>,
    /// `a` or `a-b` (inclusive).
    #[arg(long, default_value = "3-20")]
    d: String,
    #[arg(long, default_value = "2-12")]
    k: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Uniform,
    Rejection,
    Mcmc,
    Eden,
    Sequential,
}

#[derive(Args, Debug, Clone)]
struct ChainArgs {
    #[arg(long)]
    steps: Option<u64>,
    #[arg(long)]
    burn_in: Option<u64>,
    #[arg(long)]
    thinning: Option<u64>,
    #[arg(long)]
    mix: Option<f64>,
}

impl ChainArgs {
    fn given(&self) -> bool {
        self.steps.is_some() || self.burn_in.is_some() || self.thinning.is_some() || self.mix.is_some()
    }

    /// Overrides on top of the defaults for `n` vertices and `samples` samples.
    fn resolve(&self, n: usize, samples: u64) -> Result<McmcConfig> {
        let d = McmcConfig::for_samples(n, samples);
        let burn_in = self.burn_in.unwrap_or(d.burn_in);
        let thinning = self.thinning.unwrap_or(d.thinning);
        let steps = self.steps.unwrap_or(burn_in + samples.max(1) * thinning);
        McmcConfig::new(steps, burn_in, thinning, self.mix.unwrap_or(DEFAULT_PROPOSAL_MIX))
    }
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long)]
    graph: String,
    #[arg(long, value_enum)]
    method: Method,
    #[arg(long)]
    seed: Option<u64>,
    /// Target peak count (rejection, mcmc).
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    count: u64,
    #[arg(long, default_value_t = 1_000_000)]
    max_draws: u64,
    /// Start vertex (eden, sequential, mcmc with k = 1).
    #[arg(long, default_value_t = 0)]
    start: Vertex,
    /// Eden steps (default N - 1).
    #[arg(long)]
    eden_steps: Option<usize>,
    #[command(flatten)]
    chain: ChainArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExperimentName {
    BoundaryRoughness,
    GradientLine,
    TwinPeaks,
    GrowthComparison,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Mcmc,
    Oracle,
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    #[arg(value_enum)]
    name: ExperimentName,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    /// Grid or torus side, or ladder length.
    #[arg(long, default_value_t = 16)]
    n: usize,
    /// Ladder rungs.
    #[arg(long, default_value_t = 3)]
    m: usize,
    /// Tree for twin-peaks.
    #[arg(long)]
    graph: Option<String>,
    #[arg(long, value_enum, default_value = "mcmc")]
    mode: ModeArg,
    /// Let the peak move (boundary-roughness).
    #[arg(long)]
    free_peak: bool,
    #[command(flatten)]
    chain: ChainArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[arg(long, conflicts_with = "labeling", required_unless_present = "labeling")]
    trace: Option<PathBuf>,
    #[arg(long)]
    labeling: Option<PathBuf>,
    /// Defaults to the graph recorded in the input file.
    #[arg(long)]
    graph: Option<String>,
    #[arg(long)]
    out: PathBuf,
}

enum Failure {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e)
    }
}

fn need_seed(seed: Option<u64>) -> std::result::Result<u64, Failure> {
    seed.ok_or_else(|| Failure::Usage("--seed is required for stochastic commands".into()))
}

fn read(path: &PathBuf) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::io(path, e))
}

struct Output {
    stdout: Vec<u8>,
}

impl Output {
    fn emit(&mut self, out: Option<&PathBuf>, config: &RunConfig, body: &str) -> Result<()> {
        match out {
            Some(path) => {
                let mut cfg = config.clone();
                cfg.output = Some(path.display().to_string());
                let text = format!("{}{body}", cfg.preamble());
                std::fs::write(path, text).map_err(|e| Error::io(path, e))
            }
            None => {
                self.stdout.extend_from_slice(body.as_bytes());
                Ok(())
            }
        }
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run_cli<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: thread pool: {e}");
            return 2;
        }
    };
    let started = Instant::now();
    let mut buffered = Output { stdout: Vec::new() };
    let mut notes = Vec::new();
    let result = pool.install(|| dispatch(cli.command, &mut buffered, &mut notes));
    let _ = stdout.write_all(&buffered.stdout);
    let _ = stderr.write_all(&notes);
    match result {
        Ok(()) => {
            let _ = writeln!(stderr, "runtime_seconds = {:.3}", started.elapsed().as_secs_f64());
            0
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(stderr, "usage error: {m}");
            1
        }
        Err(Failure::Runtime(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

/// `run_cli` over the process arguments and standard streams.
pub fn cli_dispatch() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_cli(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn dispatch(command: Command, out: &mut Output, stderr: &mut Vec<u8>) -> std::result::Result<(), Failure> {
    match command {
        Command::GenGraph { graph, out: path } => {
            let g = parse_graph_spec(&graph)?;
            let mut cfg = RunConfig::new("gen-graph");
            cfg.graph_spec = Some(graph);
            out.emit(path.as_ref(), &cfg, &g.to_edge_list())?;
        }
        Command::Enumerate(a) => enumerate(a, out)?,
        Command::ExactTree(a) => exact_tree(a, out)?,
        Command::Sample(a) => sample(a, out)?,
        Command::Experiment(a) => experiment(a, out, stderr)?,
        Command::Render(a) => render(a)?,
    }
    Ok(())
}

fn enumerate(a: EnumerateArgs, out: &mut Output) -> std::result::Result<(), Failure> {
    let g = parse_graph_spec(&a.graph)?;
    let opts = EnumerationOptions {
        order: match a.order {
            Order::Heap => EnumerationOrder::Heap,
            Order::Lex => EnumerationOrder::Lexicographic,
        },
        allow_13: a.allow_13,
    };
    let mut cfg = RunConfig::new("enumerate")
        .option("table", format!("{:?}", a.table).to_lowercase())
        .option("order", format!("{:?}", a.order).to_lowercase());
    cfg.graph_spec = Some(a.graph.clone());
    let mut body = String::new();
    let key_cells = |k: &OutcomeKey| k.to_string();
    match a.table {
        Table::Peaks => {
            let t = enumerate_peak_counts_with(&g, opts)?;
            body.push_str("k,count,probability\n");
            for (k, c) in &t.counts {
                let _ = writeln!(body, "{k},{c},{}", t.probability(*k));
            }
        }
        Table::Top1 | Table::Top2 | Table::Statistic => {
            let table = match a.table {
                Table::Top1 => conditional_top_locations_with(&g, 1, opts)?,
                Table::Top2 => conditional_top_locations_with(&g, 2, opts)?,
                _ => {
                    let stat = match a.statistic {
                        Some(StatName::DistK1K2) => Statistic::DistK1K2,
                        Some(StatName::MinDistToRoot) => Statistic::MinDistToRoot,
                        Some(StatName::PeakLocation) => Statistic::PeakLocation,
                        None => return Err(Failure::Usage("--table statistic needs --statistic".into())),
                    };
                    cfg = cfg.option("statistic", stat.name()).option("k", a.k);
                    conditional_statistic_with(&g, a.k, &stat, opts)?
                }
            };
            body.push_str(match a.table {
                Table::Top1 => "vertex,count,probability\n",
                Table::Top2 => "k1,k2,count,probability\n",
                _ => "value,count,probability\n",
            });
            for (k, c) in &table.support {
                let _ = writeln!(body, "{},{c},{}", key_cells(k), table.probability(k));
            }
        }
        Table::Growth => {
            cfg = cfg.option("pinned", a.pinned);
            let gd = growth_vs_uniform_discrepancy(&g, a.pinned)?;
            body.push_str("vertex,uniform,sequential\n");
            let mut keys: Vec<Vertex> = gd.sequential.keys().copied().collect();
            for k in gd.uniform.support.keys() {
                if let OutcomeKey::Vertex(v) = k {
                    keys.push(*v);
                }
            }
            keys.sort_unstable();
            keys.dedup();
            for v in keys {
                let u = gd.uniform.probability(&OutcomeKey::Vertex(v));
                let s = gd.sequential.get(&v).cloned().unwrap_or_else(crate::exact::ExactProb::zero);
                let _ = writeln!(body, "{v},{u},{s}");
            }
        }
    }
    out.emit(a.out.as_ref(), &cfg, &body)?;
    Ok(())
}

fn parse_range(s: &str) -> std::result::Result<std::ops::RangeInclusive<usize>, Failure> {
    let bad = || Failure::Usage(format!("range {s:?}: expected `a` or `a-b`"));
    let (a, b) = s.split_once('-').unwrap_or((s, s));
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn need_graph(spec: &Option<String>) -> std::result::Result<Graph, Failure> {
    let s = spec.as_ref().ok_or_else(|| Failure::Usage("--graph is required".into()))?;
    Ok(parse_graph_spec(s)?)
}

fn exact_tree(a: ExactTreeArgs, out: &mut Output) -> std::result::Result<(), Failure> {
    let mut cfg = RunConfig::new("exact-tree").option("op", format!("{:?}", a.op).to_lowercase());
    cfg.graph_spec = a.graph.clone();
    let mut body = String::new();
    match a.op {
        TreeOp::SinglePeak => {
            let g = need_graph(&a.graph)?;
            let probs = g.vertices().map(|x| single_peak_prob_at(&g, x)).collect::<Result<Vec<_>>>()?;
            for (x, p) in probs.iter().enumerate() {
                let _ = writeln!(body, "{x} {p} {}", p.to_decimal());
            }
            let all: Vec<String> = probs.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(body, "fractions: {}", all.join(" "));
        }
        TreeOp::Centroids => {
            let g = need_graph(&a.graph)?;
            let join = |v: Vec<Vertex>| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            let _ = writeln!(body, "centroids: {}", join(centroids(&g)?));
            let _ = writeln!(body, "argmax_single_peak: {}", join(argmax_single_peak(&g)?));
        }
        TreeOp::TwinFactors | TreeOp::Sharpened | TreeOp::RegularSize => {
            let (ds, ks) = (parse_range(&a.d)?, parse_range(&a.k)?);
            cfg = cfg.option("d", &a.d).option("k", &a.k);
            let cells: Vec<(usize, usize)> = ds.flat_map(|d| ks.clone().map(move |k| (d, k))).collect();
            match a.op {
                TreeOp::TwinFactors => {
                    body.push_str("d,k,inequality_holds,polynomial_value,lhs_log10,rhs_log10\n");
                    let rows = cells
                        .par_iter()
                        .map(|&(d, k)| twin_factor_products(d, k))
                        .collect::<Result<Vec<_>>>()?;
                    for t in rows {
                        let _ = writeln!(
                            body,
                            "{},{},{},{},{},{}",
                            t.d,
                            t.k,
                            t.inequality_holds,
                            t.polynomial_value,
                            t.lhs.log10(),
                            t.rhs.log10()
                        );
                    }
                }
                TreeOp::Sharpened => {
                    body.push_str("d,k,bound_holds\n");
                    for (d, k) in cells {
                        let _ = writeln!(body, "{d},{k},{}", sharpened_ratio_bound_check(d, k)?);
                    }
                }
                _ => {
                    body.push_str("d,k,n_vertices\n");
                    for (d, k) in cells {
                        let _ = writeln!(body, "{d},{k},{}", regular_tree_size(d, k));
                    }
                }
            }
        }
    }
    out.emit(a.out.as_ref(), &cfg, &body)?;
    Ok(())
}

fn sample(a: SampleArgs, out: &mut Output) -> std::result::Result<(), Failure> {
    let seed = need_seed(a.seed)?;
    if a.chain.given() && !matches!(a.method, Method::Mcmc) {
        return Err(Failure::Usage("chain options apply to --method mcmc only".into()));
    }
    let g = parse_graph_spec(&a.graph)?;
    let method = format!("{:?}", a.method).to_lowercase();
    let mut cfg = RunConfig::new("sample").option("method", &method).option("count", a.count);
    cfg.graph_spec = Some(a.graph.clone());
    cfg.master_seed = Some(seed);
    let per_stream = |f: &(dyn Fn(&mut RngStream) -> Result<Labeling> + Sync)| -> Result<Vec<Labeling>> {
        (0..a.count).into_par_iter().map(|i| f(&mut RngStream::new(seed, i))).collect()
    };
    let body = match a.method {
        Method::Uniform => labelings_to_text(&per_stream(&|r| Ok(uniform_labeling(&g, r)))?),
        Method::Rejection => {
            cfg = cfg.option("k", a.k);
            cfg.max_draws = Some(a.max_draws);
            labelings_to_text(&per_stream(&|r| rejection_conditioned(&g, a.k, r, a.max_draws))?)
        }
        Method::Sequential => {
            cfg = cfg.option("start", a.start);
            labelings_to_text(&per_stream(&|r| sequential_growth_labeling(&g, a.start, r))?)
        }
        Method::Mcmc => {
            cfg = cfg.option("k", a.k).option("start", a.start);
            let chain = a.chain.resolve(g.n_vertices(), a.count)?;
            cfg.sampler = Some(chain);
            let mut rng = RngStream::new(seed, 0);
            let init = match a.k {
                1 => canonical_single_peak(&g, a.start)?,
                2 if g.is_tree() => random_two_peak_start(&g, &mut rng)?,
                _ => rejection_conditioned(&g, a.k, &mut rng, a.max_draws)?,
            };
            labelings_to_text(&mcmc_conditioned(&g, a.k, &init, &chain, &mut rng)?)
        }
        Method::Eden => {
            let steps = a.eden_steps.unwrap_or(g.n_vertices() - 1);
            cfg = cfg.option("start", a.start).option("eden_steps", steps);
            let trace = eden_growth(&g, a.start, steps, &mut RngStream::new(seed, 0))?;
            trace_to_csv(&trace)
        }
    };
    out.emit(a.out.as_ref(), &cfg, &body)?;
    Ok(())
}

fn experiment(a: ExperimentArgs, out: &mut Output, stderr: &mut Vec<u8>) -> std::result::Result<(), Failure> {
    let name = format!("{:?}", a.name);
    let mut cfg = RunConfig::new("experiment").option("experiment", to_kebab(&name)).option("trials", a.trials);
    let oracle = matches!(a.name, ExperimentName::TwinPeaks) && matches!(a.mode, ModeArg::Oracle);
    let seed = if oracle { a.seed.unwrap_or(0) } else { need_seed(a.seed)? };
    if !oracle {
        cfg.master_seed = Some(seed);
    }
    let started = Instant::now();
    let chain = |n_vertices: usize| -> Result<Option<McmcConfig>> {
        if a.chain.given() {
            a.chain.resolve(n_vertices, 1).map(Some)
        } else {
            Ok(None)
        }
    };
    let mut report = match a.name {
        ExperimentName::BoundaryRoughness => {
            cfg = cfg.option("n", a.n).option("free_peak", a.free_peak);
            boundary_roughness(a.n, a.trials, chain(a.n * a.n)?, seed, !a.free_peak)?
        }
        ExperimentName::GradientLine => {
            cfg = cfg.option("n", a.n).option("m", a.m);
            gradient_line(a.m, a.n, a.trials, chain(a.n * a.m)?, seed)?
        }
        ExperimentName::TwinPeaks => {
            let g = need_graph(&a.graph)?;
            cfg.graph_spec = a.graph.clone();
            cfg = cfg.option("mode", format!("{:?}", a.mode).to_lowercase());
            let mode = if oracle { TwinMode::Oracle } else { TwinMode::Mcmc };
            twin_peaks_tree(&g, a.trials, chain(g.n_vertices())?, seed, mode)?
        }
        ExperimentName::GrowthComparison => {
            cfg = cfg.option("n", a.n);
            growth_comparison(a.n, a.trials, chain(a.n * a.n)?, seed)?
        }
    };
    report.runtime_seconds = started.elapsed().as_secs_f64();
    let _ = writeln!(stderr, "{} runtime_seconds = {:.3}", report.experiment, report.runtime_seconds);
    out.emit(a.out.as_ref(), &cfg, &report.to_text())?;
    Ok(())
}

fn to_kebab(camel: &str) -> String {
    let mut s = String::new();
    for (i, c) in camel.chars().enumerate() {
        if c.is_ascii_uppercase() {
            if i > 0 {
                s.push('-');
            }
            s.push(c.to_ascii_lowercase());
        } else {
            s.push(c);
        }
    }
    s
}

fn render(a: RenderArgs) -> std::result::Result<(), Failure> {
    let input = a.trace.as_ref().or(a.labeling.as_ref()).expect("clap enforces one input");
    let bytes = read(input)?;
    let text = String::from_utf8(bytes).map_err(|_| Error::Parse(format!("{}: not UTF-8", input.display())))?;
    let recorded = RunConfig::from_preamble(&text).ok().and_then(|c| c.graph_spec);
    let spec = a
        .graph
        .clone()
        .or(recorded)
        .ok_or_else(|| Failure::Usage("--graph is required when the input records no graph".into()))?;
    let g = parse_graph_spec(&spec)?;
    let mut cfg = RunConfig::new("render").option("input", input.display());
    cfg.graph_spec = Some(spec);
    cfg.output = Some(a.out.display().to_string());
    let comments = cfg.preamble();
    let pgm = if a.trace.is_some() {
        render_trace_pgm(&g, &parse_trace_csv(&text)?, &comments)?
    } else {
        let ls = parse_labelings(&text)?;
        let first = ls.first().ok_or_else(|| Error::Parse("no labeling in input".into()))?;
        render_labeling_pgm(&g, first, &comments)?
    };
    std::fs::write(&a.out, pgm).map_err(|e| Error::io(&a.out, e))?;
    Ok(())
}
