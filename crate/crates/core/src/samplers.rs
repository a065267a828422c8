//! Uniform and conditioned labelings, canonical initial states, Eden growth.

use std::collections::VecDeque;

use rand::seq::SliceRandom;

use crate::cluster::ClusterTrace;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::labeling::{is_peak_raw, peaks, Labeling};
use crate::rng::RngStream;
use crate::tree::{require_tree, splits_between, EdgeSplit, SplitMode};

pub fn uniform_labeling(g: &Graph, rng: &mut RngStream) -> Labeling {
    let mut labels: Vec<usize> = (1..=g.n_vertices()).collect();
    labels.shuffle(rng);
    Labeling::from_labels(labels).expect("shuffle of 1..=N")
}

fn bfs_order(g: &Graph, start: Vertex, allowed: impl Fn(Vertex) -> bool) -> Vec<Vertex> {
    let mut seen = vec![false; g.n_vertices()];
    let mut order = vec![start];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if !seen[w] && allowed(w) {
                seen[w] = true;
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    order
}

/// Labels `N, N-1, ...` in BFS order from `x`; the only peak is `x`.
pub fn canonical_single_peak(g: &Graph, x: Vertex) -> Result<Labeling> {
    g.check_vertex(x)?;
    if !g.is_connected() {
        return Err(Error::Precondition("canonical single-peak labeling needs a connected graph".into()));
    }
    Labeling::from_descending_order(&bfs_order(g, x, |_| true))
}

/// Top `|side(x1)|` labels BFS-decreasing from `x1` on its side of the split, the
/// rest BFS-decreasing from `x2` on the other side. `x2` must not be an endpoint
/// of the removed edge. Side sizes are not checked: the top labels go to the side
/// of `x1` whichever is larger.
pub fn canonical_two_peaks(g: &Graph, split: &EdgeSplit, x1: Vertex, x2: Vertex) -> Result<Labeling> {
    require_tree(g)?;
    g.check_vertex(x1)?;
    g.check_vertex(x2)?;
    let n = g.n_vertices();
    if split.side_u.len() + split.side_v.len() != n {
        return Err(Error::Precondition("split does not belong to this tree".into()));
    }
    let side = split.side_u_mask(n);
    if side[x1] == side[x2] {
        return Err(Error::Precondition(format!("{x1} and {x2} lie on the same side of the split")));
    }
    if g.is_adjacent(x1, x2) {
        return Err(Error::Precondition(format!("{x1} and {x2} are adjacent")));
    }
    let (a, b) = split.removed_edge;
    if x2 == a || x2 == b {
        return Err(Error::Precondition(format!("x2 = {x2} is adjacent to the other side")));
    }
    let mut order = bfs_order(g, x1, |w| side[w] == side[x1]);
    order.extend(bfs_order(g, x2, |w| side[w] == side[x2]));
    let labeling = Labeling::from_descending_order(&order)?;
    let got = peaks(g, &labeling)?.peaks;
    let mut want = vec![x1, x2];
    want.sort_unstable();
    if got != want {
        return Err(Error::Internal(format!("canonical two-peak labeling has peaks {got:?}")));
    }
    Ok(labeling)
}

/// A canonical two-peak labeling of a tree for a uniformly drawn pair of
/// non-adjacent vertices, trying the splits that separate them.
pub fn random_two_peak_start(g: &Graph, rng: &mut RngStream) -> Result<Labeling> {
    let n = g.n_vertices();
    for _ in 0..10_000 {
        let (y1, y2) = (rng.below(n), rng.below(n));
        if y1 == y2 || g.is_adjacent(y1, y2) {
            continue;
        }
        let mut splits = splits_between(g, y1, y2, SplitMode::FamiliesA)?;
        splits.extend(splits_between(g, y1, y2, SplitMode::All)?);
        if let Some(l) = splits.iter().find_map(|s| canonical_two_peaks(g, s, y1, y2).ok()) {
            return Ok(l);
        }
    }
    Err(Error::Precondition("no two-peak starting labeling found".into()))
}

fn raw_peak_count(g: &Graph, labels: &[usize]) -> usize {
    g.vertices().filter(|&v| is_peak_raw(g, labels, v)).count()
}

/// Uniform draws until one has exactly `k` peaks.
pub fn rejection_conditioned(g: &Graph, k: usize, rng: &mut RngStream, max_draws: u64) -> Result<Labeling> {
    let mut labels: Vec<usize> = (1..=g.n_vertices()).collect();
    for _ in 0..max_draws {
        labels.shuffle(rng);
        if raw_peak_count(g, &labels) == k {
            return Labeling::from_labels(labels);
        }
    }
    Err(Error::Exhausted(max_draws))
}

/// Eden growth from `start`: each step attaches a uniform boundary vertex. Stops
/// early (and flags `truncated`) if the boundary empties.
pub fn eden_growth(g: &Graph, start: Vertex, steps: usize, rng: &mut RngStream) -> Result<ClusterTrace> {
    g.check_vertex(start)?;
    let n = g.n_vertices();
    if steps >= n {
        return Err(Error::Precondition(format!("{steps} steps exceed N - 1 = {}", n - 1)));
    }
    let mut in_cluster = vec![false; n];
    let mut on_boundary = vec![false; n];
    let mut boundary: Vec<Vertex> = Vec::new();
    let mut trace = ClusterTrace::default();

    let mut attach = |v: Vertex, in_cluster: &mut Vec<bool>, boundary: &mut Vec<Vertex>, trace: &mut ClusterTrace| {
        in_cluster[v] = true;
        for &w in g.neighbors(v) {
            if !in_cluster[w] && !on_boundary[w] {
                on_boundary[w] = true;
                boundary.push(w);
            }
        }
        trace.addition_order.push(v);
        trace.boundary_size.push(boundary.len());
        trace.connected.push(true);
    };

    attach(start, &mut in_cluster, &mut boundary, &mut trace);
    for _ in 0..steps {
        if boundary.is_empty() {
            trace.truncated = true;
            break;
        }
        let v = boundary.swap_remove(rng.below(boundary.len()));
        attach(v, &mut in_cluster, &mut boundary, &mut trace);
    }
    Ok(trace)
}

/// Label `N` at `start`, then `N-1, N-2, ...` along a full Eden growth.
pub fn sequential_growth_labeling(g: &Graph, start: Vertex, rng: &mut RngStream) -> Result<Labeling> {
    g.check_vertex(start)?;
    if !g.is_connected() {
        return Err(Error::Precondition("sequential growth needs a connected graph".into()));
    }
    let trace = eden_growth(g, start, g.n_vertices() - 1, rng)?;
    Labeling::from_descending_order(&trace.addition_order)
}
