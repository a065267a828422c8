// Helpers shared by the integration tests: a naive enumerator that does not go
// through the library oracle, Prüfer trees, and the standard tree suite.
#![allow(dead_code)]

use std::collections::BTreeMap;

use graph_peaks::graph::{make_path, make_star, tree_from_edges, Graph, Vertex};
use graph_peaks::rng::RngStream;

pub fn naive_peaks(g: &Graph, labels: &[usize]) -> Vec<Vertex> {
    g.vertices()
        .filter(|&v| g.neighbors(v).iter().all(|&w| labels[w] < labels[v]))
        .collect()
}

/// Calls `f` on every permutation of `1..=n`, in lexicographic order.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (1..=n).collect();
    loop {
        f(&p);
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Counts labelings keyed by their sorted peak set.
pub fn naive_peak_sets(g: &Graph) -> BTreeMap<Vec<Vertex>, u64> {
    let mut out = BTreeMap::new();
    for_each_permutation(g.n_vertices(), |p| *out.entry(naive_peaks(g, p)).or_insert(0) += 1);
    out
}

pub fn prufer_tree(n: usize, rng: &mut RngStream) -> Graph {
    let code: Vec<Vertex> = (0..n.saturating_sub(2)).map(|_| rng.below(n)).collect();
    tree_from_prufer(n, &code)
}

/// Decodes a Prüfer sequence of length `n - 2` over `0..n`.
pub fn tree_from_prufer(n: usize, code: &[Vertex]) -> Graph {
    assert!(n >= 2 && code.len() == n - 2);
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<Vertex> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    tree_from_edges(n, &edges).unwrap()
}

/// Every path and star on 2..=8 vertices plus 30 seeded random trees on 5..=8.
pub fn tree_suite() -> Vec<(String, Graph)> {
    let mut suite = Vec::new();
    for n in 2..=8 {
        suite.push((format!("path:{n}"), make_path(n).unwrap()));
        suite.push((format!("star:{n}"), make_star(n).unwrap()));
    }
    let mut rng = RngStream::new(20_240_601, 0);
    for i in 0..30 {
        let n = 5 + rng.below(4);
        suite.push((format!("prufer#{i}:{n}"), prufer_tree(n, &mut rng)));
    }
    suite
}

pub fn total_variation(a: &BTreeMap<String, f64>, b: &BTreeMap<String, f64>) -> f64 {
    let keys: std::collections::BTreeSet<&String> = a.keys().chain(b.keys()).collect();
    0.5 * keys
        .into_iter()
        .map(|k| (a.get(k).copied().unwrap_or(0.0) - b.get(k).copied().unwrap_or(0.0)).abs())
        .sum::<f64>()
}

pub fn empirical<K: ToString>(keys: impl IntoIterator<Item = K>) -> BTreeMap<String, f64> {
    let mut counts: BTreeMap<String, f64> = BTreeMap::new();
    let mut total = 0.0;
    for k in keys {
        *counts.entry(k.to_string()).or_insert(0.0) += 1.0;
        total += 1.0;
    }
    counts.values_mut().for_each(|c| *c /= total);
    counts
}

pub fn connected_subset(g: &Graph, set: &[Vertex]) -> bool {
    if set.is_empty() {
        return true;
    }
    let mut inside = vec![false; g.n_vertices()];
    set.iter().for_each(|&v| inside[v] = true);
    let mut seen = vec![false; g.n_vertices()];
    let mut stack = vec![set[0]];
    seen[set[0]] = true;
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if inside[w] && !seen[w] {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    reached == set.len()
}

pub fn outer_boundary(g: &Graph, set: &[Vertex]) -> usize {
    let mut inside = vec![false; g.n_vertices()];
    set.iter().for_each(|&v| inside[v] = true);
    g.vertices()
        .filter(|&w| !inside[w] && g.neighbors(w).iter().any(|&u| inside[u]))
        .count()
}
