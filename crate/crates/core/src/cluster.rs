//! Nested top-label clusters `C_0 ⊂ C_1 ⊂ ...` and their outer boundaries.

use crate::error::Result;
use crate::graph::{Graph, Vertex};
use crate::labeling::Labeling;

/// Step `k` adds `addition_order[k]`; `boundary_size[k]` and `connected[k]` describe
/// the cluster of the first `k + 1` vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClusterTrace {
    pub addition_order: Vec<Vertex>,
    pub boundary_size: Vec<usize>,
    pub connected: Vec<bool>,
    /// Growth ended before the requested number of steps (empty boundary).
    pub truncated: bool,
}

impl ClusterTrace {
    pub fn len(&self) -> usize {
        self.addition_order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.addition_order.is_empty()
    }

    pub fn cluster(&self, k: usize) -> &[Vertex] {
        &self.addition_order[..=k]
    }

    pub fn max_boundary(&self) -> usize {
        self.boundary_size.iter().copied().max().unwrap_or(0)
    }

    /// Attachment step of each vertex (`None` if never attached).
    pub fn ranks(&self, n_vertices: usize) -> Vec<Option<usize>> {
        let mut r = vec![None; n_vertices];
        for (k, &v) in self.addition_order.iter().enumerate() {
            r[v] = Some(k);
        }
        r
    }
}

/// Incremental bookkeeping of `|∂C|` and of the component count of `C` as vertices
/// join one at a time. O(deg) amortized per addition.
pub(crate) struct GrowingCluster<'g> {
    g: &'g Graph,
    in_cluster: Vec<bool>,
    inside_neighbors: Vec<u32>,
    boundary: usize,
    dsu: Dsu,
    components: usize,
}

impl<'g> GrowingCluster<'g> {
    pub(crate) fn new(g: &'g Graph) -> Self {
        let n = g.n_vertices();
        GrowingCluster {
            g,
            in_cluster: vec![false; n],
            inside_neighbors: vec![0; n],
            boundary: 0,
            dsu: Dsu::new(n),
            components: 0,
        }
    }

    pub(crate) fn add(&mut self, v: Vertex) {
        debug_assert!(!self.in_cluster[v]);
        if self.inside_neighbors[v] > 0 {
            self.boundary -= 1;
        }
        self.in_cluster[v] = true;
        self.components += 1;
        for &w in self.g.neighbors(v) {
            if self.in_cluster[w] {
                if self.dsu.union(v, w) {
                    self.components -= 1;
                }
            } else {
                if self.inside_neighbors[w] == 0 {
                    self.boundary += 1;
                }
                self.inside_neighbors[w] += 1;
            }
        }
    }

    pub(crate) fn boundary(&self) -> usize {
        self.boundary
    }

    pub(crate) fn is_connected(&self) -> bool {
        self.components == 1
    }
}

struct Dsu {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a as u32;
        self.size[a] += self.size[b];
        true
    }
}

/// Trace of the clusters `C_k` = vertices holding the top `k + 1` labels.
pub fn cluster_trace(g: &Graph, labeling: &Labeling) -> Result<ClusterTrace> {
    labeling.check_for(g)?;
    let n = g.n_vertices();
    let mut trace = ClusterTrace {
        addition_order: Vec::with_capacity(n),
        boundary_size: Vec::with_capacity(n),
        connected: Vec::with_capacity(n),
        truncated: false,
    };
    let mut cluster = GrowingCluster::new(g);
    for v in labeling.descending_order() {
        cluster.add(v);
        trace.addition_order.push(v);
        trace.boundary_size.push(cluster.boundary());
        trace.connected.push(cluster.is_connected());
    }
    Ok(trace)
}
