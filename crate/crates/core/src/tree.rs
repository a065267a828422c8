//! Rooted views of trees: descendant counts, centroids, and the two-subtree
//! partitions obtained by deleting one edge.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Tree rooted at a fixed vertex. `desc_count[v]` is the number of descendants of
/// `v` (including `v`) when the tree hangs from `root`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeIndex {
    root: Vertex,
    parent: Vec<Option<Vertex>>,
    depth: Vec<usize>,
    desc_count: Vec<usize>,
    bfs_order: Vec<Vertex>,
}

impl TreeIndex {
    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    pub fn depth(&self, v: Vertex) -> usize {
        self.depth[v]
    }

    pub fn desc_count(&self, v: Vertex) -> usize {
        self.desc_count[v]
    }

    pub fn desc_counts(&self) -> &[usize] {
        &self.desc_count
    }

    /// Vertices in BFS order from the root, visiting neighbors in ascending order.
    pub fn bfs_order(&self) -> &[Vertex] {
        &self.bfs_order
    }

    pub fn n_vertices(&self) -> usize {
        self.parent.len()
    }

    pub fn children<'g>(&'g self, g: &'g Graph, v: Vertex) -> impl Iterator<Item = Vertex> + 'g {
        g.neighbors(v).iter().copied().filter(move |&w| self.parent[w] == Some(v))
    }

    /// Vertices on the path from `v` up to the root, both included.
    pub fn path_to_root(&self, mut v: Vertex) -> Vec<Vertex> {
        let mut path = vec![v];
        while let Some(p) = self.parent[v] {
            path.push(p);
            v = p;
        }
        path
    }

    /// True iff `ancestor` lies on the path from the root to `v`.
    pub fn is_ancestor(&self, ancestor: Vertex, v: Vertex) -> bool {
        let mut cur = Some(v);
        while let Some(c) = cur {
            if self.depth[c] < self.depth[ancestor] {
                return false;
            }
            if c == ancestor {
                return true;
            }
            cur = self.parent[c];
        }
        false
    }
}

pub(crate) fn require_tree(g: &Graph) -> Result<()> {
    if g.is_tree() {
        Ok(())
    } else {
        Err(Error::NotATree(format!(
            "{} vertices, {} edges, connected={}",
            g.n_vertices(),
            g.n_edges(),
            g.is_connected()
        )))
    }
}

pub fn rooted_index(g: &Graph, root: Vertex) -> Result<TreeIndex> {
    g.check_vertex(root)?;
    require_tree(g)?;
    Ok(rooted_index_unchecked(g, root))
}

/// Rooted view of a graph already known to be a tree.
pub(crate) fn rooted_index_unchecked(g: &Graph, root: Vertex) -> TreeIndex {
    let n = g.n_vertices();
    let mut parent = vec![None; n];
    let mut depth = vec![0; n];
    let mut seen = vec![false; n];
    let mut bfs_order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(u) = queue.pop_front() {
        bfs_order.push(u);
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(u);
                depth[w] = depth[u] + 1;
                queue.push_back(w);
            }
        }
    }
    let mut desc_count = vec![1; n];
    for &v in bfs_order.iter().rev() {
        if let Some(p) = parent[v] {
            desc_count[p] += desc_count[v];
        }
    }
    TreeIndex {
        root,
        parent,
        depth,
        desc_count,
        bfs_order,
    }
}

/// Vertices whose removal leaves no component larger than `N/2`, ascending.
pub fn centroids(g: &Graph) -> Result<Vec<Vertex>> {
    require_tree(g)?;
    let n = g.n_vertices();
    let idx = rooted_index_unchecked(g, 0);
    let mut out = Vec::new();
    for x in g.vertices() {
        let above = n - idx.desc_count(x);
        let largest = idx.children(g, x).map(|c| idx.desc_count(c)).fold(above, usize::max);
        if 2 * largest <= n {
            out.push(x);
        }
    }
    Ok(out)
}

/// The two vertex sets left after deleting one tree edge. Both sides are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSplit {
    pub removed_edge: (Vertex, Vertex),
    pub side_u: Vec<Vertex>,
    pub side_v: Vec<Vertex>,
}

impl EdgeSplit {
    pub fn in_side_u(&self, w: Vertex) -> bool {
        self.side_u.binary_search(&w).is_ok()
    }

    pub fn side_of(&self, w: Vertex) -> &[Vertex] {
        if self.in_side_u(w) {
            &self.side_u
        } else {
            &self.side_v
        }
    }

    pub fn other_side_of(&self, w: Vertex) -> &[Vertex] {
        if self.in_side_u(w) {
            &self.side_v
        } else {
            &self.side_u
        }
    }

    /// Membership mask over all vertices: `true` for `side_u`.
    pub fn side_u_mask(&self, n_vertices: usize) -> Vec<bool> {
        let mut mask = vec![false; n_vertices];
        for &w in &self.side_u {
            mask[w] = true;
        }
        mask
    }
}

pub fn split_by_edge(g: &Graph, edge: (Vertex, Vertex)) -> Result<EdgeSplit> {
    require_tree(g)?;
    let (u, v) = edge;
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if !g.is_adjacent(u, v) {
        return Err(Error::NotAnEdge(u, v));
    }
    Ok(split_unchecked(g, u, v))
}

fn split_unchecked(g: &Graph, u: Vertex, v: Vertex) -> EdgeSplit {
    let mut in_u = vec![false; g.n_vertices()];
    let mut stack = vec![u];
    in_u[u] = true;
    while let Some(a) = stack.pop() {
        for &b in g.neighbors(a) {
            if !in_u[b] && !(a == u && b == v) {
                in_u[b] = true;
                stack.push(b);
            }
        }
    }
    let (side_u, side_v): (Vec<Vertex>, Vec<Vertex>) = g.vertices().partition(|&w| in_u[w]);
    EdgeSplit {
        removed_edge: (u, v),
        side_u,
        side_v,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitMode {
    /// One split per edge of the `y1`-`y2` geodesic.
    All,
    /// The family used to cover two-peak events at `y1`, `y2` by products of
    /// single-peak events on two subtrees.
    FamiliesA,
}

/// Geodesic from `a` to `b`, both included.
pub fn geodesic(g: &Graph, a: Vertex, b: Vertex) -> Result<Vec<Vertex>> {
    let idx = rooted_index(g, a)?;
    g.check_vertex(b)?;
    let mut path = idx.path_to_root(b);
    path.reverse();
    Ok(path)
}

/// Edge splits separating `y1` from `y2`, every one oriented so that `side_u`
/// contains `y1`.
///
/// With [`SplitMode::FamiliesA`]:
/// * distance > 2: the geodesic edges not incident to `y1` or `y2`;
/// * distance 2 with midpoint `w != 0`: one split, with `w` attached to the side
///   of the `y_i` whose branch (after deleting `w`) does not hold vertex 0. When
///   vertex 0 lies in neither branch, `w` goes with `y2`;
/// * otherwise: empty.
pub fn splits_between(g: &Graph, y1: Vertex, y2: Vertex, mode: SplitMode) -> Result<Vec<EdgeSplit>> {
    if y1 == y2 {
        return Err(Error::Precondition("splits_between needs y1 != y2".into()));
    }
    let path = geodesic(g, y1, y2)?;
    let dist = path.len() - 1;
    let splits = match mode {
        SplitMode::All => path.windows(2).map(|e| split_unchecked(g, e[0], e[1])).collect(),
        SplitMode::FamiliesA if dist > 2 => path[1..dist]
            .windows(2)
            .map(|e| split_unchecked(g, e[0], e[1]))
            .collect(),
        SplitMode::FamiliesA if dist == 2 && path[1] != 0 => {
            let mid = path[1];
            // branch of y2 after deleting mid = side of (mid, y2) containing y2
            let toward_y2 = split_unchecked(g, y2, mid);
            let root_in_y2_branch = toward_y2.in_side_u(0);
            if root_in_y2_branch {
                vec![split_unchecked(g, mid, y2)]
            } else {
                vec![split_unchecked(g, y1, mid)]
            }
        }
        SplitMode::FamiliesA => Vec::new(),
    };
    Ok(splits)
}
