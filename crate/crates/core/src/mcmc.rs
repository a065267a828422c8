//! Metropolis chain on labelings with a fixed number of peaks.
//!
//! Proposals are transpositions, so the kernel is symmetric: with probability
//! `proposal_mix` the vertices holding ranks `j, j+1` swap, otherwise a uniform
//! pair of distinct vertices swaps. A proposal is accepted iff the constraint still
//! holds, which only needs the peak status of the two vertices and their
//! neighbors.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::labeling::{is_peak_raw, peaks, Labeling};
use crate::rng::RngStream;

pub const DEFAULT_PROPOSAL_MIX: f64 = 0.8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McmcConfig {
    pub steps: u64,
    pub burn_in: u64,
    pub thinning: u64,
    pub proposal_mix: f64,
}

impl McmcConfig {
    pub fn new(steps: u64, burn_in: u64, thinning: u64, proposal_mix: f64) -> Result<Self> {
        let cfg = McmcConfig {
            steps,
            burn_in,
            thinning,
            proposal_mix,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Burn-in `ceil(10 N ln N)`, thinning `N`, and enough steps for `samples`
    /// emitted states.
    pub fn for_samples(n_vertices: usize, samples: u64) -> Self {
        let n = n_vertices.max(1) as f64;
        let burn_in = (10.0 * n * n.ln()).ceil() as u64;
        let thinning = n_vertices.max(1) as u64;
        McmcConfig {
            steps: burn_in + samples.max(1) * thinning,
            burn_in,
            thinning,
            proposal_mix: DEFAULT_PROPOSAL_MIX,
        }
    }

    /// Default burn-in and thinning for a fixed step budget.
    pub fn for_steps(n_vertices: usize, steps: u64) -> Result<Self> {
        let d = Self::for_samples(n_vertices, 1);
        Self::new(steps, d.burn_in, d.thinning, DEFAULT_PROPOSAL_MIX)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Precondition(m));
        if self.steps == 0 || self.thinning == 0 {
            return bad("steps and thinning must be positive".into());
        }
        if self.burn_in >= self.steps {
            return bad(format!("burn-in {} must be below steps {}", self.burn_in, self.steps));
        }
        if self.thinning > self.steps - self.burn_in {
            return bad(format!("thinning {} exceeds the post-burn-in steps", self.thinning));
        }
        if !(0.0..=1.0).contains(&self.proposal_mix) {
            return bad(format!("proposal mix {} outside [0, 1]", self.proposal_mix));
        }
        Ok(())
    }

    /// Number of emitted samples.
    pub fn samples(&self) -> u64 {
        (self.steps - self.burn_in) / self.thinning
    }

    /// A state is emitted after step `t` (1-based).
    pub fn emits_after(&self, t: u64) -> bool {
        t > self.burn_in && (t - self.burn_in).is_multiple_of(self.thinning)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeakConstraint {
    /// Exactly `k` peaks.
    Count(usize),
    /// Peak set exactly `{v}`.
    Pinned(Vertex),
}

pub struct ConditionedChain<'g> {
    g: &'g Graph,
    labels: Vec<usize>,
    inverse: Vec<Vertex>,
    peak_count: usize,
    constraint: PeakConstraint,
    mix: f64,
    stamp: Vec<u32>,
    epoch: u32,
    affected: Vec<Vertex>,
    pub proposals: u64,
    pub accepted: u64,
}

impl<'g> ConditionedChain<'g> {
    pub fn new(g: &'g Graph, init: &Labeling, constraint: PeakConstraint, proposal_mix: f64) -> Result<Self> {
        let p = peaks(g, init)?.peaks;
        let ok = match constraint {
            PeakConstraint::Count(k) => p.len() == k,
            PeakConstraint::Pinned(v) => p == [v],
        };
        if !ok {
            return Err(Error::Precondition(format!(
                "initial labeling has peaks {p:?}, violating {constraint:?}"
            )));
        }
        let n = g.n_vertices();
        let mut inverse = vec![0; n + 1];
        for v in g.vertices() {
            inverse[init.label(v)] = v;
        }
        Ok(ConditionedChain {
            g,
            labels: init.labels().to_vec(),
            inverse,
            peak_count: p.len(),
            constraint,
            mix: proposal_mix,
            stamp: vec![0; n],
            epoch: 0,
            affected: Vec::new(),
            proposals: 0,
            accepted: 0,
        })
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn labeling(&self) -> Labeling {
        Labeling::from_labels(self.labels.clone()).expect("chain keeps a bijection")
    }

    pub fn peak_count(&self) -> usize {
        self.peak_count
    }

    pub fn vertex_with(&self, j: usize) -> Vertex {
        self.inverse[j]
    }

    pub fn peaks(&self) -> Vec<Vertex> {
        self.g.vertices().filter(|&v| is_peak_raw(self.g, &self.labels, v)).collect()
    }

    fn propose(&self, rng: &mut RngStream) -> Option<(Vertex, Vertex)> {
        let n = self.labels.len();
        if n < 2 {
            return None;
        }
        if rng.unit() < self.mix {
            let j = 1 + rng.below(n - 1);
            Some((self.inverse[j], self.inverse[j + 1]))
        } else {
            let u = rng.below(n);
            let mut v = rng.below(n - 1);
            if v >= u {
                v += 1;
            }
            Some((u, v))
        }
    }

    fn collect_affected(&mut self, u: Vertex, v: Vertex) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.affected.clear();
        for a in [u, v] {
            for &w in std::iter::once(&a).chain(self.g.neighbors(a)) {
                if self.stamp[w] != self.epoch {
                    self.stamp[w] = self.epoch;
                    self.affected.push(w);
                }
            }
        }
    }

    fn local_peaks(&self) -> usize {
        self.affected.iter().filter(|&&w| is_peak_raw(self.g, &self.labels, w)).count()
    }

    fn raw_swap(&mut self, u: Vertex, v: Vertex) {
        self.labels.swap(u, v);
        self.inverse[self.labels[u]] = u;
        self.inverse[self.labels[v]] = v;
    }

    /// Swaps the labels of `u` and `v` if the constraint survives; returns whether
    /// the swap was kept.
    pub fn try_swap(&mut self, u: Vertex, v: Vertex) -> bool {
        self.collect_affected(u, v);
        let before = self.local_peaks();
        self.raw_swap(u, v);
        let after = self.local_peaks();
        let count = self.peak_count + after - before;
        let ok = match self.constraint {
            PeakConstraint::Count(k) => count == k,
            PeakConstraint::Pinned(x) => count == 1 && is_peak_raw(self.g, &self.labels, x),
        };
        if ok {
            self.peak_count = count;
        } else {
            self.raw_swap(u, v);
        }
        ok
    }

    /// One Metropolis step.
    pub fn step(&mut self, rng: &mut RngStream) -> bool {
        self.proposals += 1;
        match self.propose(rng) {
            Some((u, v)) if self.try_swap(u, v) => {
                self.accepted += 1;
                true
            }
            _ => false,
        }
    }
}

/// Runs the chain for `cfg.steps` steps, handing every emitted state to `visit`.
pub fn run_chain<F>(
    g: &Graph,
    init: &Labeling,
    constraint: PeakConstraint,
    cfg: &McmcConfig,
    rng: &mut RngStream,
    mut visit: F,
) -> Result<ChainStats>
where
    F: FnMut(&ConditionedChain<'_>),
{
    cfg.validate()?;
    let mut chain = ConditionedChain::new(g, init, constraint, cfg.proposal_mix)?;
    let mut emitted = 0;
    for t in 1..=cfg.steps {
        chain.step(rng);
        if cfg.emits_after(t) {
            debug_assert!(chain.peak_count() == chain.peaks().len());
            visit(&chain);
            emitted += 1;
        }
    }
    Ok(ChainStats {
        proposals: chain.proposals,
        accepted: chain.accepted,
        emitted,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainStats {
    pub proposals: u64,
    pub accepted: u64,
    pub emitted: u64,
}

/// Thinned samples conditioned on exactly `k` peaks.
pub fn mcmc_conditioned(g: &Graph, k: usize, init: &Labeling, cfg: &McmcConfig, rng: &mut RngStream) -> Result<Vec<Labeling>> {
    let mut out = Vec::with_capacity(cfg.samples() as usize);
    run_chain(g, init, PeakConstraint::Count(k), cfg, rng, |c| out.push(c.labeling()))?;
    Ok(out)
}

/// Thinned samples whose peak set is exactly `{x}`.
pub fn mcmc_pinned_peak(g: &Graph, x: Vertex, init: &Labeling, cfg: &McmcConfig, rng: &mut RngStream) -> Result<Vec<Labeling>> {
    let mut out = Vec::with_capacity(cfg.samples() as usize);
    run_chain(g, init, PeakConstraint::Pinned(x), cfg, rng, |c| out.push(c.labeling()))?;
    Ok(out)
}
