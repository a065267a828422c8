//! Exhaustive enumeration over all `N!` labelings of a small graph.
//!
//! Work is split into `N` cosets (the label of the last vertex is fixed in each)
//! which run in parallel and merge by exact addition, so every table is
//! independent of the number of workers. Within a coset, permutations follow
//! Heap's algorithm with incremental peak bookkeeping: a transposition can only
//! change the peak status of the two swapped vertices and their neighbors.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{factorial, ExactCount, ExactProb};
use crate::graph::{Graph, Vertex};
use crate::labeling::is_peak_raw;

pub const ENUMERATION_CAP: usize = 12;
pub const ENUMERATION_OVERRIDE_CAP: usize = 13;
pub const GROWTH_CAP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EnumerationOrder {
    /// Heap's algorithm, incremental peak updates.
    #[default]
    Heap,
    /// Lexicographic successor order, peaks recomputed from scratch.
    Lexicographic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EnumerationOptions {
    pub order: EnumerationOrder,
    /// Raise the cap from 12 to 13 vertices (6.2e9 labelings; hours).
    pub allow_13: bool,
}

/// One labeling during enumeration.
pub struct LabelView<'a> {
    pub labels: &'a [usize],
    pub peak_mask: u64,
}

impl LabelView<'_> {
    pub fn peak_count(&self) -> usize {
        self.peak_mask.count_ones() as usize
    }

    pub fn peaks(&self) -> impl Iterator<Item = Vertex> + '_ {
        let mut mask = self.peak_mask;
        std::iter::from_fn(move || {
            if mask == 0 {
                return None;
            }
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        })
    }

    /// Peaks ordered by decreasing label.
    pub fn peaks_by_height(&self) -> Vec<Vertex> {
        let mut p: Vec<_> = self.peaks().collect();
        p.sort_unstable_by_key(|&v| std::cmp::Reverse(self.labels[v]));
        p
    }

    /// Vertex holding label `j`.
    pub fn vertex_with(&self, j: usize) -> Vertex {
        self.labels.iter().position(|&l| l == j).expect("labels form a bijection")
    }
}

fn check_cap(g: &Graph, opts: EnumerationOptions) -> Result<()> {
    let cap = if opts.allow_13 { ENUMERATION_OVERRIDE_CAP } else { ENUMERATION_CAP };
    if g.n_vertices() > cap {
        return Err(Error::EnumerationCap { n: g.n_vertices(), cap });
    }
    Ok(())
}

fn full_mask(g: &Graph, labels: &[usize]) -> u64 {
    g.vertices()
        .filter(|&v| is_peak_raw(g, labels, v))
        .fold(0, |m, v| m | (1 << v))
}

#[inline]
fn refresh(g: &Graph, labels: &[usize], mask: &mut u64, v: Vertex) {
    if is_peak_raw(g, labels, v) {
        *mask |= 1 << v;
    } else {
        *mask &= !(1 << v);
    }
}

fn swap_and_update(g: &Graph, labels: &mut [usize], mask: &mut u64, a: Vertex, b: Vertex) {
    labels.swap(a, b);
    for v in [a, b] {
        refresh(g, labels, mask, v);
        for &w in g.neighbors(v) {
            refresh(g, labels, mask, w);
        }
    }
}

/// Visits the `(N-1)!` labelings giving label `top` to the last vertex.
fn visit_coset<F: FnMut(&LabelView<'_>)>(g: &Graph, top: usize, order: EnumerationOrder, mut visit: F) {
    let n = g.n_vertices();
    let mut labels: Vec<usize> = (1..=n).filter(|&l| l != top).collect();
    labels.push(top);
    let free = n - 1;
    let mut mask = full_mask(g, &labels);
    visit(&LabelView {
        labels: &labels,
        peak_mask: mask,
    });
    match order {
        EnumerationOrder::Heap => {
            let mut c = vec![0usize; free];
            let mut i = 1;
            while i < free {
                if c[i] < i {
                    let j = if i % 2 == 0 { 0 } else { c[i] };
                    swap_and_update(g, &mut labels, &mut mask, j, i);
                    visit(&LabelView {
                        labels: &labels,
                        peak_mask: mask,
                    });
                    c[i] += 1;
                    i = 1;
                } else {
                    c[i] = 0;
                    i += 1;
                }
            }
        }
        EnumerationOrder::Lexicographic => {
            while next_permutation(&mut labels[..free]) {
                let mask = full_mask(g, &labels);
                visit(&LabelView {
                    labels: &labels,
                    peak_mask: mask,
                });
            }
        }
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let Some(i) = (0..a.len() - 1).rev().find(|&i| a[i] < a[i + 1]) else {
        return false;
    };
    let j = (i + 1..a.len()).rev().find(|&j| a[j] > a[i]).expect("successor exists");
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// Counts labelings by the key returned from `key` (labelings mapped to `None`
/// are skipped).
pub fn tally<K, F>(g: &Graph, opts: EnumerationOptions, key: F) -> Result<BTreeMap<K, u64>>
where
    K: Ord + Send,
    F: Fn(&LabelView<'_>) -> Option<K> + Sync,
{
    check_cap(g, opts)?;
    let n = g.n_vertices();
    let merged = (1..=n)
        .into_par_iter()
        .map(|top| {
            let mut local = BTreeMap::new();
            visit_coset(g, top, opts.order, |view| {
                if let Some(k) = key(view) {
                    *local.entry(k).or_insert(0u64) += 1;
                }
            });
            local
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    Ok(merged)
}

fn to_exact<K: Ord>(m: BTreeMap<K, u64>) -> BTreeMap<K, ExactCount> {
    m.into_iter().map(|(k, v)| (k, ExactCount::from(v))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeakCountTable {
    pub counts: BTreeMap<usize, ExactCount>,
    pub total: ExactCount,
}

impl PeakCountTable {
    pub fn count(&self, k: usize) -> ExactCount {
        self.counts.get(&k).cloned().unwrap_or_default()
    }

    pub fn probability(&self, k: usize) -> ExactProb {
        ExactProb::new(self.count(k).0, self.total.0.clone()).expect("count at most N!")
    }
}

pub fn enumerate_peak_counts(g: &Graph) -> Result<PeakCountTable> {
    enumerate_peak_counts_with(g, EnumerationOptions::default())
}

pub fn enumerate_peak_counts_with(g: &Graph, opts: EnumerationOptions) -> Result<PeakCountTable> {
    let counts = to_exact(tally(g, opts, |v| Some(v.peak_count()))?);
    Ok(PeakCountTable {
        counts,
        total: ExactCount(factorial(g.n_vertices())),
    })
}

/// Key of a conditional table entry.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OutcomeKey {
    Vertex(Vertex),
    /// Ordered pair `(K1, K2)`.
    Pair(Vertex, Vertex),
    Value(i64),
}

impl fmt::Display for OutcomeKey {
    /// CSV-safe: pairs as `u,v`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutcomeKey::Vertex(v) => write!(f, "{v}"),
            OutcomeKey::Pair(u, v) => write!(f, "{u},{v}"),
            OutcomeKey::Value(x) => write!(f, "{x}"),
        }
    }
}

/// The conditioning event of a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    PeakCount(usize),
    SinglePeakAt(Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionalDistribution {
    pub condition: Condition,
    pub support: BTreeMap<OutcomeKey, ExactCount>,
}

impl ConditionalDistribution {
    /// Size of the conditioning event.
    pub fn total(&self) -> ExactCount {
        ExactCount(self.support.values().map(|c| c.0.clone()).sum())
    }

    pub fn probability(&self, key: &OutcomeKey) -> ExactProb {
        let total = self.total().0;
        match self.support.get(key) {
            Some(c) if !total.is_zero() => ExactProb::new(c.0.clone(), total).expect("entry at most total"),
            _ => ExactProb::zero(),
        }
    }

    pub fn probabilities(&self) -> BTreeMap<OutcomeKey, ExactProb> {
        self.support.keys().map(|k| (k.clone(), self.probability(k))).collect()
    }

    /// For pair tables: marginal counts of the first (`first = true`) or second
    /// coordinate.
    pub fn pair_marginal(&self, first: bool) -> BTreeMap<Vertex, ExactCount> {
        let mut out: BTreeMap<Vertex, BigUint> = BTreeMap::new();
        for (k, c) in &self.support {
            if let OutcomeKey::Pair(a, b) = *k {
                *out.entry(if first { a } else { b }).or_default() += &c.0;
            }
        }
        out.into_iter().map(|(k, v)| (k, ExactCount(v))).collect()
    }
}

/// Exact law of `K` (k = 1) or of `(K1, K2)` (k = 2) given exactly `k` peaks.
pub fn conditional_top_locations(g: &Graph, k: usize) -> Result<ConditionalDistribution> {
    conditional_top_locations_with(g, k, EnumerationOptions::default())
}

pub fn conditional_top_locations_with(
    g: &Graph,
    k: usize,
    opts: EnumerationOptions,
) -> Result<ConditionalDistribution> {
    let support = match k {
        1 => tally(g, opts, |v| (v.peak_count() == 1).then(|| OutcomeKey::Vertex(v.peaks().next().unwrap())))?,
        2 => tally(g, opts, |v| {
            (v.peak_count() == 2).then(|| {
                let p = v.peaks_by_height();
                OutcomeKey::Pair(p[0], p[1])
            })
        })?,
        _ => {
            return Err(Error::Precondition(format!(
                "top locations are tabulated for k = 1 or 2, not {k}"
            )))
        }
    };
    Ok(ConditionalDistribution {
        condition: Condition::PeakCount(k),
        support: to_exact(support),
    })
}

pub type CustomStatistic = Arc<dyn Fn(&LabelView<'_>) -> Option<OutcomeKey> + Send + Sync>;

#[derive(Clone)]
pub enum Statistic {
    /// Distance between the two highest peaks; needs `k >= 2`.
    DistK1K2,
    /// `min_i dist(K_i, vertex 0)` over all peaks.
    MinDistToRoot,
    /// Location of the highest peak.
    PeakLocation,
    Custom(CustomStatistic),
}

impl fmt::Debug for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Statistic {
    pub fn name(&self) -> &'static str {
        match self {
            Statistic::DistK1K2 => "dist_K1_K2",
            Statistic::MinDistToRoot => "min_dist_to_root",
            Statistic::PeakLocation => "peak_location",
            Statistic::Custom(_) => "custom",
        }
    }
}

fn all_pairs_distances(g: &Graph) -> Result<Vec<Vec<usize>>> {
    g.vertices()
        .map(|u| {
            g.bfs_distances(u)
                .into_iter()
                .enumerate()
                .map(|(v, d)| d.ok_or(Error::Unreachable(u, v)))
                .collect()
        })
        .collect()
}

/// Exact pushforward of `statistic` under the condition of exactly `k` peaks.
pub fn conditional_statistic(g: &Graph, k: usize, statistic: &Statistic) -> Result<ConditionalDistribution> {
    conditional_statistic_with(g, k, statistic, EnumerationOptions::default())
}

pub fn conditional_statistic_with(
    g: &Graph,
    k: usize,
    statistic: &Statistic,
    opts: EnumerationOptions,
) -> Result<ConditionalDistribution> {
    if k == 0 || (k < 2 && matches!(statistic, Statistic::DistK1K2)) {
        return Err(Error::UndefinedStatistic {
            statistic: statistic.name().into(),
            peaks: k,
        });
    }
    check_cap(g, opts)?;
    let support = match statistic {
        Statistic::PeakLocation => tally(g, opts, |v| {
            (v.peak_count() == k).then(|| OutcomeKey::Vertex(v.peaks_by_height()[0]))
        })?,
        Statistic::DistK1K2 => {
            let dist = all_pairs_distances(g)?;
            tally(g, opts, |v| {
                (v.peak_count() == k).then(|| {
                    let p = v.peaks_by_height();
                    OutcomeKey::Value(dist[p[0]][p[1]] as i64)
                })
            })?
        }
        Statistic::MinDistToRoot => {
            let dist = all_pairs_distances(g)?;
            tally(g, opts, |v| {
                (v.peak_count() == k)
                    .then(|| OutcomeKey::Value(v.peaks().map(|p| dist[0][p]).min().unwrap_or(0) as i64))
            })?
        }
        Statistic::Custom(f) => tally(g, opts, |v| if v.peak_count() == k { f(v) } else { None })?,
    };
    Ok(ConditionalDistribution {
        condition: Condition::PeakCount(k),
        support: to_exact(support),
    })
}

/// Exact law of the full attachment order of Eden growth started at `start`,
/// each step attaching a uniform boundary vertex. Probabilities are `1 / D`
/// with `D` the product of the boundary sizes met along the history.
pub fn growth_history_law(g: &Graph, start: Vertex) -> Result<Vec<(Vec<Vertex>, BigRational)>> {
    g.check_vertex(start)?;
    if g.n_vertices() > GROWTH_CAP {
        return Err(Error::EnumerationCap {
            n: g.n_vertices(),
            cap: GROWTH_CAP,
        });
    }
    if !g.is_connected() {
        return Err(Error::Precondition("growth histories need a connected graph".into()));
    }
    let n = g.n_vertices();
    let mut out = Vec::new();
    let mut order = vec![start];
    let mut in_cluster = vec![false; n];
    in_cluster[start] = true;
    grow(g, &mut order, &mut in_cluster, 1, &mut out);
    Ok(out)
}

fn grow(g: &Graph, order: &mut Vec<Vertex>, in_cluster: &mut [bool], denom: u64, out: &mut Vec<(Vec<Vertex>, BigRational)>) {
    if order.len() == g.n_vertices() {
        out.push((order.clone(), BigRational::new(BigInt::one(), BigInt::from(denom))));
        return;
    }
    let boundary: Vec<Vertex> = g
        .vertices()
        .filter(|&v| !in_cluster[v] && g.neighbors(v).iter().any(|&w| in_cluster[w]))
        .collect();
    let b = boundary.len() as u64;
    for v in boundary {
        in_cluster[v] = true;
        order.push(v);
        grow(g, order, in_cluster, denom * b, out);
        order.pop();
        in_cluster[v] = false;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthDiscrepancy {
    /// Location of label `N-1` for uniform labelings whose only peak is the pinned
    /// vertex (counts).
    pub uniform: ConditionalDistribution,
    /// Location of the second attached vertex under Eden growth from the pinned
    /// vertex.
    pub sequential: BTreeMap<Vertex, ExactProb>,
}

pub fn growth_vs_uniform_discrepancy(g: &Graph, pinned: Vertex) -> Result<GrowthDiscrepancy> {
    g.check_vertex(pinned)?;
    if g.n_vertices() > GROWTH_CAP {
        return Err(Error::EnumerationCap {
            n: g.n_vertices(),
            cap: GROWTH_CAP,
        });
    }
    let n = g.n_vertices();
    let pin_mask = 1u64 << pinned;
    let uniform = tally(g, EnumerationOptions::default(), |v| {
        (v.peak_mask == pin_mask && n >= 2).then(|| OutcomeKey::Vertex(v.vertex_with(n - 1)))
    })?;
    let mut sequential: BTreeMap<Vertex, BigRational> = BTreeMap::new();
    for (order, p) in growth_history_law(g, pinned)? {
        if let Some(&second) = order.get(1) {
            *sequential.entry(second).or_insert_with(BigRational::zero) += p;
        }
    }
    Ok(GrowthDiscrepancy {
        uniform: ConditionalDistribution {
            condition: Condition::SinglePeakAt(pinned),
            support: to_exact(uniform),
        },
        sequential: sequential
            .into_iter()
            .map(|(k, p)| Ok((k, ExactProb::from_rational(&p)?)))
            .collect::<Result<_>>()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_barbell_tree, make_path, make_regular_tree};

    fn counts(t: &PeakCountTable) -> Vec<(usize, u64)> {
        t.counts.iter().map(|(k, c)| (*k, c.to_u64().unwrap())).collect()
    }

    #[test]
    fn small_peak_tables() {
        assert_eq!(counts(&enumerate_peak_counts(&make_path(4).unwrap()).unwrap()), vec![(1, 8), (2, 16)]);
        assert_eq!(counts(&enumerate_peak_counts(&make_path(2).unwrap()).unwrap()), vec![(1, 2)]);
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(counts(&enumerate_peak_counts(&tri).unwrap()), vec![(1, 6)]);
        assert_eq!(counts(&enumerate_peak_counts(&make_path(1).unwrap()).unwrap()), vec![(1, 1)]);
    }

    #[test]
    fn cap_is_enforced() {
        let g = make_path(13).unwrap();
        assert!(matches!(enumerate_peak_counts(&g), Err(Error::EnumerationCap { n: 13, cap: 12 })));
    }

    #[test]
    fn orders_agree() {
        let g = make_path(5).unwrap();
        let lex = EnumerationOptions {
            order: EnumerationOrder::Lexicographic,
            ..Default::default()
        };
        for k in [1, 2] {
            assert_eq!(
                conditional_top_locations(&g, k).unwrap(),
                conditional_top_locations_with(&g, k, lex).unwrap()
            );
        }
        let b = make_barbell_tree(1, 5).unwrap();
        assert_eq!(enumerate_peak_counts(&b).unwrap(), enumerate_peak_counts_with(&b, lex).unwrap());
    }

    #[test]
    fn heap_visits_every_permutation_once() {
        let g = make_path(6).unwrap();
        let seen = tally(&g, EnumerationOptions::default(), |v| Some(v.labels.to_vec())).unwrap();
        assert_eq!(seen.len(), 720);
        assert!(seen.values().all(|&c| c == 1));
    }

    #[test]
    fn incremental_mask_is_exact() {
        let g = make_barbell_tree(1, 5).unwrap();
        let bad = tally(&g, EnumerationOptions::default(), |v| {
            (v.peak_mask != full_mask(&g, v.labels)).then_some(())
        })
        .unwrap();
        assert!(bad.is_empty());
    }

    #[test]
    fn path4_locations() {
        let g = make_path(4).unwrap();
        let one = conditional_top_locations(&g, 1).unwrap();
        let got: Vec<_> = one.support.values().map(|c| c.to_u64().unwrap()).collect();
        assert_eq!(got, vec![1, 3, 3, 1]);
        let two = conditional_top_locations(&g, 2).unwrap();
        for key in two.support.keys() {
            let OutcomeKey::Pair(a, b) = *key else { panic!() };
            assert!(a != b && !g.is_adjacent(a, b));
        }
        assert_eq!(two.total().to_u64(), Some(16));
    }

    #[test]
    fn statistics() {
        let g = make_path(4).unwrap();
        let d = conditional_statistic(&g, 2, &Statistic::DistK1K2).unwrap();
        assert_eq!(d.total().to_u64(), Some(16));
        assert!(d.support.keys().all(|k| matches!(k, OutcomeKey::Value(2) | OutcomeKey::Value(3))));
        assert!(matches!(
            conditional_statistic(&g, 1, &Statistic::DistK1K2),
            Err(Error::UndefinedStatistic { .. })
        ));
        assert_eq!(
            conditional_statistic(&g, 1, &Statistic::PeakLocation).unwrap(),
            conditional_top_locations(&g, 1).unwrap()
        );
        let custom = Statistic::Custom(Arc::new(|v: &LabelView<'_>| Some(OutcomeKey::Value(v.labels[0] as i64))));
        let c = conditional_statistic(&g, 1, &custom).unwrap();
        assert_eq!(c.total().to_u64(), Some(8));
    }

    #[test]
    fn example_growth_discrepancy() {
        let g = make_path(4).unwrap();
        let gd = growth_vs_uniform_discrepancy(&g, 1).unwrap();
        assert_eq!(gd.uniform.probability(&OutcomeKey::Vertex(0)).to_string(), "1/3");
        assert_eq!(gd.uniform.probability(&OutcomeKey::Vertex(2)).to_string(), "2/3");
        let seq: Vec<_> = gd.sequential.iter().map(|(k, p)| (*k, p.to_string())).collect();
        assert_eq!(seq, vec![(0, "1/2".to_string()), (2, "1/2".to_string())]);

        let two = make_path(2).unwrap();
        let gd = growth_vs_uniform_discrepancy(&two, 0).unwrap();
        assert_eq!(gd.uniform.probability(&OutcomeKey::Vertex(1)), ExactProb::one());
        assert_eq!(gd.sequential[&1], ExactProb::one());
    }

    #[test]
    fn growth_law_sums_to_one() {
        let g = make_regular_tree(2, 1).unwrap();
        let law = growth_history_law(&g, 1).unwrap();
        let total: BigRational = law.iter().map(|(_, p)| p.clone()).sum();
        assert!(total.is_one());
    }
}
