//! Labelings (bijections onto `1..=N`) and their peaks.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Bijection from vertices onto `1..=N`, kept together with its inverse.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Labeling {
    label: Vec<usize>,
    // inverse[j] = vertex holding label j; slot 0 unused
    inverse: Vec<Vertex>,
}

impl fmt::Debug for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Labeling").field(&self.label).finish()
    }
}

impl Labeling {
    /// `labels[v]` is the label of vertex `v`.
    pub fn from_labels(labels: Vec<usize>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidLabeling("empty labeling".into()));
        }
        let mut inverse = vec![usize::MAX; n + 1];
        for (v, &l) in labels.iter().enumerate() {
            if l == 0 || l > n {
                return Err(Error::InvalidLabeling(format!("label {l} at vertex {v} outside 1..={n}")));
            }
            if inverse[l] != usize::MAX {
                return Err(Error::InvalidLabeling(format!("label {l} used twice")));
            }
            inverse[l] = v;
        }
        Ok(Labeling { label: labels, inverse })
    }

    /// `order[i]` receives label `N - i`, so `order[0]` holds the maximum.
    pub fn from_descending_order(order: &[Vertex]) -> Result<Self> {
        let n = order.len();
        let mut labels = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n {
                return Err(Error::InvalidLabeling(format!("vertex {v} out of range")));
            }
            labels[v] = n - i;
        }
        Self::from_labels(labels)
    }

    pub fn identity(n: usize) -> Self {
        Labeling {
            label: (1..=n).collect(),
            inverse: std::iter::once(usize::MAX).chain(0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.label.len()
    }

    pub fn is_empty(&self) -> bool {
        self.label.is_empty()
    }

    #[inline]
    pub fn label(&self, v: Vertex) -> usize {
        self.label[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.label
    }

    /// Vertex holding label `j` (`1 <= j <= N`).
    #[inline]
    pub fn vertex_with(&self, j: usize) -> Vertex {
        self.inverse[j]
    }

    /// Vertices from the highest label down to the lowest.
    pub fn descending_order(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.inverse[1..].iter().rev().copied()
    }

    /// Exchanges the labels of `u` and `v`. An involution.
    #[inline]
    pub fn swap_vertices(&mut self, u: Vertex, v: Vertex) {
        let (lu, lv) = (self.label[u], self.label[v]);
        self.label[u] = lv;
        self.label[v] = lu;
        self.inverse[lu] = v;
        self.inverse[lv] = u;
    }

    /// Exchanges the vertices holding ranks `j` and `j + 1`.
    #[inline]
    pub fn swap_ranks(&mut self, j: usize) {
        let (u, v) = (self.inverse[j], self.inverse[j + 1]);
        self.swap_vertices(u, v);
    }

    pub fn check_for(&self, g: &Graph) -> Result<()> {
        if self.len() == g.n_vertices() {
            Ok(())
        } else {
            Err(Error::InvalidLabeling(format!(
                "labeling has {} entries, graph has {} vertices",
                self.len(),
                g.n_vertices()
            )))
        }
    }

    /// Full invariant check, for tests and defensive paths.
    pub fn is_consistent(&self) -> bool {
        let n = self.len();
        self.inverse.len() == n + 1
            && self.label.iter().all(|&l| (1..=n).contains(&l))
            && (0..n).all(|v| self.inverse[self.label[v]] == v)
    }

    /// Text format: line `v` holds `label[v]`.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.len() * 4);
        for l in &self.label {
            out.push_str(&l.to_string());
            out.push('\n');
        }
        out
    }

    /// Inverse of [`Labeling::to_text`]; blank lines and `#` lines are skipped.
    pub fn parse_text(text: &str) -> Result<Self> {
        let labels = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .enumerate()
            .map(|(i, l)| l.parse().map_err(|e| Error::Parse(format!("labeling line {}: {e}", i + 1))))
            .collect::<Result<Vec<usize>>>()?;
        Self::from_labels(labels)
    }
}

/// Strict local maxima, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeakSet {
    pub peaks: Vec<Vertex>,
}

impl PeakSet {
    pub fn len(&self) -> usize {
        self.peaks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.peaks.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.peaks.binary_search(&v).is_ok()
    }

    /// Peaks ordered by decreasing label: `K_1, K_2, ...`.
    pub fn by_height(&self, labeling: &Labeling) -> Vec<Vertex> {
        let mut v = self.peaks.clone();
        v.sort_unstable_by_key(|&p| std::cmp::Reverse(labeling.label(p)));
        v
    }
}

/// `v` beats every neighbor. Isolated vertices count as peaks.
#[inline]
pub fn is_peak_raw(g: &Graph, labels: &[usize], v: Vertex) -> bool {
    let lv = labels[v];
    g.neighbors(v).iter().all(|&w| labels[w] < lv)
}

#[inline]
pub fn is_peak(g: &Graph, labeling: &Labeling, v: Vertex) -> bool {
    is_peak_raw(g, labeling.labels(), v)
}

pub fn peaks(g: &Graph, labeling: &Labeling) -> Result<PeakSet> {
    labeling.check_for(g)?;
    Ok(PeakSet {
        peaks: g.vertices().filter(|&v| is_peak(g, labeling, v)).collect(),
    })
}

pub fn peak_count(g: &Graph, labeling: &Labeling) -> Result<usize> {
    labeling.check_for(g)?;
    Ok(g.vertices().filter(|&v| is_peak(g, labeling, v)).count())
}

/// Connectivity of the subgraph induced by `set`.
pub fn is_connected_subset(g: &Graph, set: &[Vertex]) -> Result<bool> {
    let Some(&start) = set.first() else {
        return Err(Error::Precondition("connectivity of the empty set is undefined".into()));
    };
    let mut member = vec![false; g.n_vertices()];
    for &v in set {
        g.check_vertex(v)?;
        member[v] = true;
    }
    let target = member.iter().filter(|&&m| m).count();
    let mut seen = vec![false; g.n_vertices()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut reached = 1;
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if member[w] && !seen[w] {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    Ok(reached == target)
}
