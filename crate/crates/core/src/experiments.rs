//! Measurement campaigns with per-trial rows, summaries and seed provenance.
//!
//! Trial `t` draws from `RngStream::new(master_seed, t)` (two streams `2t`, `2t+1`
//! in the growth comparison), so rows do not depend on scheduling. Summaries are
//! computed from the rows by the same function that [`recompute_summary`] uses.
//! Half-widths are `1.96 * s / sqrt(trials)` with `s` the sample standard deviation
//! (zero for a single trial). All logarithms are natural.

use std::fmt::Write as _;
use std::ops::Range;

use rayon::prelude::*;

use crate::cluster::cluster_trace;
use crate::error::{Error, Result};
use crate::graph::{make_grid, make_torus, Graph, Vertex};
use crate::gradient::gradient_path;
use crate::labeling::{peaks, Labeling};
use crate::mcmc::{run_chain, McmcConfig, PeakConstraint};
use crate::oracle::{conditional_top_locations, OutcomeKey};
use crate::rng::{RngStream, RNG_ALGORITHM};
use crate::samplers::{canonical_single_peak, eden_growth, random_two_peak_start};
use crate::tree::require_tree;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryStat {
    pub name: String,
    pub value: f64,
    pub half_width: Option<f64>,
}

impl SummaryStat {
    fn plain(name: &str, value: f64) -> Self {
        SummaryStat {
            name: name.into(),
            value,
            half_width: None,
        }
    }

    fn with_ci(name: &str, values: &[f64]) -> Self {
        let (value, hw) = mean_ci(values);
        SummaryStat {
            name: name.into(),
            value,
            half_width: Some(hw),
        }
    }
}

/// Mean and normal-approximation 95% half-width.
pub fn mean_ci(values: &[f64]) -> (f64, f64) {
    let t = values.len();
    if t == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / t as f64;
    if t == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (t - 1) as f64;
    (mean, 1.96 * var.sqrt() / (t as f64).sqrt())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedProvenance {
    pub master_seed: u64,
    pub streams: Range<u64>,
}

/// Text layout:
///
/// ```text
/// experiment = <name>
/// version = <crate version>
/// rng = <generator>
/// log = natural
/// master_seed = <u64>          (stochastic runs only)
/// streams = <a>..<b>
/// <parameter> = <value>        (one line each, in order)
///
/// <column>,<column>,...
/// <row>
/// ...
///
/// [summary]
/// <name> = <value> +- <half width>    (or `<name> = <value>`)
/// [series]                            (optional)
/// <name> = <v> <v> ...
/// ```
///
/// Numbers use the shortest representation that reads back exactly.
/// `runtime_seconds` is not written, so identical runs give identical files.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub experiment: String,
    pub parameters: Vec<(String, String)>,
    pub seed: Option<SeedProvenance>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub summary: Vec<SummaryStat>,
    pub series: Vec<(String, Vec<f64>)>,
    pub runtime_seconds: f64,
}

impl ExperimentReport {
    pub fn parameter(&self, key: &str) -> Option<&str> {
        self.parameters.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn summary_value(&self, name: &str) -> Option<&SummaryStat> {
        self.summary.iter().find(|s| s.name == name)
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn series_values(&self, name: &str) -> Option<&[f64]> {
        self.series.iter().find(|(k, _)| k == name).map(|(_, v)| v.as_slice())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "experiment = {}", self.experiment);
        let _ = writeln!(out, "version = {VERSION}");
        let _ = writeln!(out, "rng = {RNG_ALGORITHM}");
        let _ = writeln!(out, "log = natural");
        if let Some(s) = &self.seed {
            let _ = writeln!(out, "master_seed = {}", s.master_seed);
            let _ = writeln!(out, "streams = {}..{}", s.streams.start, s.streams.end);
        }
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "{k} = {v}");
        }
        out.push('\n');
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out.push_str("\n[summary]\n");
        for s in &self.summary {
            match s.half_width {
                Some(h) => {
                    let _ = writeln!(out, "{} = {} +- {}", s.name, s.value, h);
                }
                None => {
                    let _ = writeln!(out, "{} = {}", s.name, s.value);
                }
            }
        }
        if !self.series.is_empty() {
            out.push_str("[series]\n");
            for (name, values) in &self.series {
                let cells: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(out, "{name} = {}", cells.join(" "));
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let perr = |m: String| Error::Parse(format!("experiment report: {m}"));
        let num = |s: &str| s.trim().parse::<f64>().map_err(|e| perr(format!("number {s:?}: {e}")));
        let mut lines = text.lines().skip_while(|l| l.starts_with('#'));
        let mut report = ExperimentReport {
            experiment: String::new(),
            parameters: Vec::new(),
            seed: None,
            columns: Vec::new(),
            rows: Vec::new(),
            summary: Vec::new(),
            series: Vec::new(),
            runtime_seconds: 0.0,
        };
        let mut master = None;
        let mut streams = None;
        for line in lines.by_ref() {
            if line.is_empty() {
                break;
            }
            let (k, v) = line.split_once(" = ").ok_or_else(|| perr(format!("header line {line:?}")))?;
            match k {
                "experiment" => report.experiment = v.to_string(),
                "version" | "rng" | "log" => {}
                "master_seed" => master = Some(v.parse::<u64>().map_err(|e| perr(format!("seed: {e}")))?),
                "streams" => {
                    let (a, b) = v.split_once("..").ok_or_else(|| perr(format!("streams {v:?}")))?;
                    let p = |s: &str| s.parse::<u64>().map_err(|e| perr(format!("streams: {e}")));
                    streams = Some(p(a)?..p(b)?);
                }
                _ => report.parameters.push((k.to_string(), v.to_string())),
            }
        }
        if let (Some(master_seed), Some(streams)) = (master, streams) {
            report.seed = Some(SeedProvenance { master_seed, streams });
        }
        let header = lines.next().ok_or_else(|| perr("missing column header".into()))?;
        report.columns = header.split(',').map(str::to_string).collect();
        for line in lines.by_ref() {
            if line.is_empty() {
                break;
            }
            let row = line.split(',').map(num).collect::<Result<Vec<_>>>()?;
            if row.len() != report.columns.len() {
                return Err(perr(format!("row {line:?} has {} cells", row.len())));
            }
            report.rows.push(row);
        }
        let mut section = "";
        for line in lines {
            match line {
                "" => {}
                "[summary]" | "[series]" => section = line,
                _ => {
                    let (k, v) = line.split_once(" = ").ok_or_else(|| perr(format!("line {line:?}")))?;
                    match section {
                        "[summary]" => {
                            let (value, half_width) = match v.split_once(" +- ") {
                                Some((a, b)) => (num(a)?, Some(num(b)?)),
                                None => (num(v)?, None),
                            };
                            report.summary.push(SummaryStat {
                                name: k.to_string(),
                                value,
                                half_width,
                            });
                        }
                        "[series]" => {
                            let values = v.split_ascii_whitespace().map(num).collect::<Result<Vec<_>>>()?;
                            report.series.push((k.to_string(), values));
                        }
                        _ => return Err(perr(format!("line {line:?} outside a section"))),
                    }
                }
            }
        }
        Ok(report)
    }
}

/// Recomputes the summary block from the rows and parameters.
pub fn recompute_summary(report: &ExperimentReport) -> Result<Vec<SummaryStat>> {
    let param = |k: &str| -> Result<f64> {
        report
            .parameter(k)
            .ok_or_else(|| Error::Parse(format!("report lacks parameter {k}")))?
            .parse::<f64>()
            .map_err(|e| Error::Parse(format!("parameter {k}: {e}")))
    };
    let col = |name: &str| -> Result<Vec<f64>> {
        report
            .column(name)
            .ok_or_else(|| Error::Parse(format!("report lacks column {name}")))
    };
    match report.experiment.as_str() {
        "boundary_roughness" => Ok(summarize_roughness(param("n")? as usize, &col("r")?, &col("max_boundary")?)),
        "gradient_line" => Ok(summarize_gradient(param("n")? as usize, &col("length")?)),
        "twin_peaks_tree" => {
            let diameter = param("diameter")? as usize;
            let weights = match report.parameter("mode") {
                Some("oracle") => col("count")?,
                _ => vec![1.0; report.rows.len()],
            };
            let ci = report.parameter("mode") != Some("oracle");
            Ok(summarize_twin(
                &col("k1")?,
                &col("dist")?,
                &col("min_dist_root")?,
                &weights,
                diameter,
                ci,
            ))
        }
        "growth_comparison" => Ok(summarize_growth(&col("eden_max_boundary")?, &col("conditioned_max_boundary")?)),
        other => Err(Error::Parse(format!("unknown experiment {other:?}"))),
    }
}

fn check_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        return Err(Error::Precondition("at least one trial is required".into()));
    }
    Ok(())
}

fn final_sample(g: &Graph, init: &Labeling, constraint: PeakConstraint, cfg: &McmcConfig, rng: &mut RngStream) -> Result<Labeling> {
    let mut last = None;
    run_chain(g, init, constraint, cfg, rng, |c| last = Some(c.labels().to_vec()))?;
    Labeling::from_labels(last.ok_or_else(|| Error::Internal("chain emitted nothing".into()))?)
}

fn mcmc_params(cfg: &McmcConfig) -> Vec<(String, String)> {
    vec![
        ("mcmc_steps".into(), cfg.steps.to_string()),
        ("mcmc_burn_in".into(), cfg.burn_in.to_string()),
        ("mcmc_thinning".into(), cfg.thinning.to_string()),
        ("mcmc_proposal_mix".into(), cfg.proposal_mix.to_string()),
    ]
}

/// `f(n) = (ln n)^{-1/2} ln ln n`.
pub fn roughness_exponent(n: usize) -> f64 {
    let ln = (n as f64).ln();
    ln.ln() / ln.sqrt()
}

/// `n (1 + ln ln n / ln n)`.
pub fn gradient_threshold(n: usize) -> f64 {
    let ln = (n as f64).ln();
    n as f64 * (1.0 + ln.ln() / ln)
}

/// Per trial: a single-peak labeling of the `n x n` grid (MCMC from the
/// BFS-decreasing labeling at the center), and `R`, the number of steps `k` in
/// `0..n^2` with `|∂C_k| <= n^{2 - f(n)}`. With `pin_center` the peak stays at the
/// center; otherwise only the peak count is constrained.
pub fn boundary_roughness(
    n: usize,
    trials: usize,
    cfg: Option<McmcConfig>,
    master_seed: u64,
    pin_center: bool,
) -> Result<ExperimentReport> {
    if n < 16 {
        return Err(Error::Precondition(format!(
            "boundary roughness needs n >= 16 (ln ln n is small or negative below), got {n}"
        )));
    }
    check_trials(trials)?;
    let g = make_grid(n, n)?;
    let cfg = cfg.unwrap_or_else(|| McmcConfig::for_samples(g.n_vertices(), 1));
    cfg.validate()?;
    let center = ((n - 1) / 2) * n + (n - 1) / 2;
    let init = canonical_single_peak(&g, center)?;
    let bound = (n as f64).powf(2.0 - roughness_exponent(n));
    let constraint = if pin_center {
        PeakConstraint::Pinned(center)
    } else {
        PeakConstraint::Count(1)
    };
    let rows = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = RngStream::new(master_seed, t as u64);
            let l = final_sample(&g, &init, constraint, &cfg, &mut rng)?;
            let trace = cluster_trace(&g, &l)?;
            let r = trace.boundary_size.iter().filter(|&&b| b as f64 <= bound).count();
            Ok(vec![t as f64, r as f64, trace.max_boundary() as f64])
        })
        .collect::<Result<Vec<_>>>()?;
    let r: Vec<f64> = rows.iter().map(|r| r[1]).collect();
    let mb: Vec<f64> = rows.iter().map(|r| r[2]).collect();
    let mut parameters = vec![
        ("n".into(), n.to_string()),
        ("trials".into(), trials.to_string()),
        ("pin_center".into(), pin_center.to_string()),
        ("center".into(), center.to_string()),
    ];
    parameters.extend(mcmc_params(&cfg));
    Ok(ExperimentReport {
        experiment: "boundary_roughness".into(),
        parameters,
        seed: Some(SeedProvenance {
            master_seed,
            streams: 0..trials as u64,
        }),
        columns: vec!["trial".into(), "r".into(), "max_boundary".into()],
        summary: summarize_roughness(n, &r, &mb),
        rows,
        series: Vec::new(),
        runtime_seconds: 0.0,
    })
}

fn summarize_roughness(n: usize, r: &[f64], max_boundary: &[f64]) -> Vec<SummaryStat> {
    let f = roughness_exponent(n);
    let count_threshold = f * (n * n) as f64;
    let event: Vec<f64> = r.iter().map(|&x| if x >= count_threshold { 1.0 } else { 0.0 }).collect();
    vec![
        SummaryStat::plain("f_n", f),
        SummaryStat::plain("boundary_threshold", (n as f64).powf(2.0 - f)),
        SummaryStat::plain("count_threshold", count_threshold),
        SummaryStat::with_ci("mean_r", r),
        SummaryStat::with_ci("fraction_f", &event),
        SummaryStat::with_ci("mean_max_boundary", max_boundary),
    ]
}

/// Per trial: a labeling of `G_{m,n}` whose only peak is `(1,1)` (pinned-peak
/// MCMC), and the length (vertex count) of its gradient path.
pub fn gradient_line(m: usize, n: usize, trials: usize, cfg: Option<McmcConfig>, master_seed: u64) -> Result<ExperimentReport> {
    if m < 3 || n < 16 {
        return Err(Error::Precondition(format!("gradient line needs m >= 3 and n >= 16, got m = {m}, n = {n}")));
    }
    check_trials(trials)?;
    let g = make_grid(m, n)?;
    let cfg = cfg.unwrap_or_else(|| McmcConfig::for_samples(g.n_vertices(), 1));
    cfg.validate()?;
    let init = canonical_single_peak(&g, 0)?;
    let rows = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = RngStream::new(master_seed, t as u64);
            let l = final_sample(&g, &init, PeakConstraint::Pinned(0), &cfg, &mut rng)?;
            if peaks(&g, &l)?.peaks != [0] {
                return Err(Error::Internal("pinned chain left the family".into()));
            }
            let path = gradient_path(&g, &l)?;
            Ok(vec![t as f64, path.len() as f64])
        })
        .collect::<Result<Vec<_>>>()?;
    let lengths: Vec<f64> = rows.iter().map(|r| r[1]).collect();
    let mut parameters = vec![
        ("m".into(), m.to_string()),
        ("n".into(), n.to_string()),
        ("trials".into(), trials.to_string()),
    ];
    parameters.extend(mcmc_params(&cfg));
    Ok(ExperimentReport {
        experiment: "gradient_line".into(),
        parameters,
        seed: Some(SeedProvenance {
            master_seed,
            streams: 0..trials as u64,
        }),
        columns: vec!["trial".into(), "length".into()],
        summary: summarize_gradient(n, &lengths),
        rows,
        series: Vec::new(),
        runtime_seconds: 0.0,
    })
}

fn summarize_gradient(n: usize, lengths: &[f64]) -> Vec<SummaryStat> {
    let threshold = gradient_threshold(n);
    let exceed: Vec<f64> = lengths.iter().map(|&l| if l >= threshold { 1.0 } else { 0.0 }).collect();
    vec![
        SummaryStat::plain("threshold", threshold),
        SummaryStat::with_ci("mean_length", lengths),
        SummaryStat::with_ci("fraction_exceeding", &exceed),
        SummaryStat::plain("min_length", lengths.iter().copied().fold(f64::INFINITY, f64::min)),
        SummaryStat::plain("max_length", lengths.iter().copied().fold(f64::NEG_INFINITY, f64::max)),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwinMode {
    Mcmc,
    /// Exact, by enumeration (`N <= 12`).
    Oracle,
}

fn diameter(dist: &[Vec<usize>]) -> usize {
    dist.iter().flat_map(|r| r.iter().copied()).max().unwrap_or(0)
}

/// Law of `(K1, K2, dist(K1, K2), min_i dist(K_i, 0))` given exactly two peaks,
/// where vertex 0 is the root `v*`. Oracle rows are weighted by their labeling
/// counts; MCMC rows are one final chain state per trial, each chain started from
/// a canonical two-peak labeling on a split separating a random pair.
pub fn twin_peaks_tree(
    g: &Graph,
    trials: usize,
    cfg: Option<McmcConfig>,
    master_seed: u64,
    mode: TwinMode,
) -> Result<ExperimentReport> {
    require_tree(g)?;
    if g.n_vertices() < 3 {
        return Err(Error::Precondition("two peaks need at least three vertices".into()));
    }
    let dist: Vec<Vec<usize>> = g
        .vertices()
        .map(|u| g.bfs_distances(u).into_iter().map(|d| d.unwrap_or(0)).collect())
        .collect();
    let diam = diameter(&dist);
    let mut parameters = vec![
        ("graph".into(), g.family().to_string()),
        ("n_vertices".into(), g.n_vertices().to_string()),
        ("diameter".into(), diam.to_string()),
        ("root".into(), "0".into()),
    ];
    let (columns, rows, seed, ci) = match mode {
        TwinMode::Oracle => {
            parameters.push(("mode".into(), "oracle".into()));
            let table = conditional_top_locations(g, 2)?;
            let rows: Vec<Vec<f64>> = table
                .support
                .iter()
                .map(|(key, count)| {
                    let OutcomeKey::Pair(a, b) = *key else {
                        unreachable!("pair table")
                    };
                    let c = count.to_u64().expect("count below N!") as f64;
                    vec![a as f64, b as f64, dist[a][b] as f64, dist[0][a].min(dist[0][b]) as f64, c]
                })
                .collect();
            (
                vec!["k1", "k2", "dist", "min_dist_root", "count"],
                rows,
                None,
                false,
            )
        }
        TwinMode::Mcmc => {
            check_trials(trials)?;
            parameters.push(("mode".into(), "mcmc".into()));
            parameters.push(("trials".into(), trials.to_string()));
            let cfg = cfg.unwrap_or_else(|| McmcConfig::for_samples(g.n_vertices(), 1));
            cfg.validate()?;
            parameters.extend(mcmc_params(&cfg));
            let rows = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let mut rng = RngStream::new(master_seed, t as u64);
                    let init = random_two_peak_start(g, &mut rng)?;
                    let l = final_sample(g, &init, PeakConstraint::Count(2), &cfg, &mut rng)?;
                    let p = peaks(g, &l)?.by_height(&l);
                    if p.len() != 2 {
                        return Err(Error::Internal(format!("two-peak chain emitted peaks {p:?}")));
                    }
                    let (a, b) = (p[0], p[1]);
                    Ok(vec![
                        t as f64,
                        a as f64,
                        b as f64,
                        dist[a][b] as f64,
                        dist[0][a].min(dist[0][b]) as f64,
                    ])
                })
                .collect::<Result<Vec<_>>>()?;
            (
                vec!["trial", "k1", "k2", "dist", "min_dist_root"],
                rows,
                Some(SeedProvenance {
                    master_seed,
                    streams: 0..trials as u64,
                }),
                true,
            )
        }
    };
    let columns: Vec<String> = columns.into_iter().map(String::from).collect();
    let at = |name: &str| -> Vec<f64> {
        let i = columns.iter().position(|c| c == name).expect("known column");
        rows.iter().map(|r| r[i]).collect()
    };
    let weights = if ci { vec![1.0; rows.len()] } else { at("count") };
    let summary = summarize_twin(&at("k1"), &at("dist"), &at("min_dist_root"), &weights, diam, ci);
    Ok(ExperimentReport {
        experiment: "twin_peaks_tree".into(),
        parameters,
        seed,
        columns,
        rows,
        summary,
        series: Vec::new(),
        runtime_seconds: 0.0,
    })
}

fn summarize_twin(k1: &[f64], dist: &[f64], min_dist: &[f64], weights: &[f64], diameter: usize, ci: bool) -> Vec<SummaryStat> {
    let indicator = |pred: &dyn Fn(usize) -> bool| -> Vec<f64> { (0..k1.len()).map(|i| if pred(i) { 1.0 } else { 0.0 }).collect() };
    let stat = |name: &str, values: &[f64]| -> SummaryStat {
        if ci {
            SummaryStat::with_ci(name, values)
        } else {
            let total: f64 = weights.iter().sum();
            let mean = values.iter().zip(weights).map(|(v, w)| v * w).sum::<f64>() / total;
            SummaryStat::plain(name, mean)
        }
    };
    let mut out = Vec::new();
    if !ci {
        out.push(SummaryStat::plain("total", weights.iter().sum()));
    }
    out.push(stat("p_k1_root", &indicator(&|i| k1[i] == 0.0)));
    out.push(stat("mean_dist", dist));
    out.push(stat("mean_min_dist_root", min_dist));
    for d in 2..=diameter {
        out.push(stat(&format!("p_dist_{d}"), &indicator(&|i| dist[i] == d as f64)));
    }
    out
}

/// Paired traces on the `n x n` torus started at the center: Eden growth and the
/// cluster trace of a single-peak labeling (MCMC from the BFS-decreasing
/// labeling). Series hold the per-step mean boundary sizes and their ratio.
pub fn growth_comparison(n: usize, trials: usize, cfg: Option<McmcConfig>, master_seed: u64) -> Result<ExperimentReport> {
    if n < 16 {
        return Err(Error::Precondition(format!("growth comparison needs n >= 16, got {n}")));
    }
    check_trials(trials)?;
    let g = make_torus(2, n)?;
    let total = g.n_vertices();
    let cfg = cfg.unwrap_or_else(|| McmcConfig::for_samples(total, 1));
    cfg.validate()?;
    let center: Vertex = (n / 2) * n + n / 2;
    let init = canonical_single_peak(&g, center)?;
    let traces = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut eden_rng = RngStream::new(master_seed, 2 * t as u64);
            let eden = eden_growth(&g, center, total - 1, &mut eden_rng)?;
            let mut chain_rng = RngStream::new(master_seed, 2 * t as u64 + 1);
            let l = final_sample(&g, &init, PeakConstraint::Count(1), &cfg, &mut chain_rng)?;
            let cond = cluster_trace(&g, &l)?;
            Ok((eden.boundary_size, cond.boundary_size))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut eden_mean = vec![0.0; total];
    let mut cond_mean = vec![0.0; total];
    let mut rows = Vec::with_capacity(trials);
    for (t, (e, c)) in traces.iter().enumerate() {
        for k in 0..total {
            eden_mean[k] += e[k] as f64;
            cond_mean[k] += c[k] as f64;
        }
        let max = |v: &[usize]| v.iter().copied().max().unwrap_or(0) as f64;
        rows.push(vec![t as f64, max(e), max(c)]);
    }
    for k in 0..total {
        eden_mean[k] /= trials as f64;
        cond_mean[k] /= trials as f64;
    }
    let ratio: Vec<f64> = eden_mean
        .iter()
        .zip(&cond_mean)
        .map(|(&e, &c)| if e == 0.0 && c == 0.0 { 1.0 } else { c / e })
        .collect();
    let eden_max: Vec<f64> = rows.iter().map(|r| r[1]).collect();
    let cond_max: Vec<f64> = rows.iter().map(|r| r[2]).collect();
    let mut parameters = vec![
        ("n".into(), n.to_string()),
        ("trials".into(), trials.to_string()),
        ("start".into(), center.to_string()),
    ];
    parameters.extend(mcmc_params(&cfg));
    Ok(ExperimentReport {
        experiment: "growth_comparison".into(),
        parameters,
        seed: Some(SeedProvenance {
            master_seed,
            streams: 0..2 * trials as u64,
        }),
        columns: vec!["trial".into(), "eden_max_boundary".into(), "conditioned_max_boundary".into()],
        summary: summarize_growth(&eden_max, &cond_max),
        rows,
        series: vec![
            ("eden_mean_boundary".into(), eden_mean),
            ("conditioned_mean_boundary".into(), cond_mean),
            ("boundary_ratio".into(), ratio),
        ],
        runtime_seconds: 0.0,
    })
}

fn summarize_growth(eden_max: &[f64], cond_max: &[f64]) -> Vec<SummaryStat> {
    let diff: Vec<f64> = cond_max.iter().zip(eden_max).map(|(c, e)| c - e).collect();
    vec![
        SummaryStat::with_ci("mean_eden_max_boundary", eden_max),
        SummaryStat::with_ci("mean_conditioned_max_boundary", cond_max),
        SummaryStat::with_ci("mean_max_boundary_difference", &diff),
    ]
}
