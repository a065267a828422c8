//! Immutable simple graphs and the generators for every family used in the crate.
//!
//! Vertices are dense ids `0..n_vertices`. Vertex 0 is the root `v*` for rooted
//! families (regular trees) and the designated origin otherwise. Lattice families
//! are numbered row-major over their coordinate tuple, so the last coordinate varies
//! fastest.

use std::collections::VecDeque;
use std::fmt;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Family tag, carrying the generator parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Path,
    /// `G_{m,n}`: `m` rungs, length `n`.
    Grid { m: usize, n: usize },
    Torus { dim: usize, side: usize },
    RegularTree { d: usize, k: usize },
    /// Numbering `x_1..x_n`, `y_1..y_n`, `z_1..z_m`; see [`BarbellVertex`].
    Barbell { n: usize, m: usize },
    Custom,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Path => write!(f, "path"),
            Family::Grid { m, n } => write!(f, "grid({m},{n})"),
            Family::Torus { dim, side } => write!(f, "torus({dim},{side})"),
            Family::RegularTree { d, k } => write!(f, "regular_tree({d},{k})"),
            Family::Barbell { n, m } => write!(f, "barbell({n},{m})"),
            Family::Custom => write!(f, "custom"),
        }
    }
}

/// Lattice coordinates stored row-major: `id = c_0 * e_1 * ... + c_{d-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coords {
    extents: Vec<usize>,
    flat: Vec<usize>,
}

impl Coords {
    fn row_major(extents: Vec<usize>) -> Self {
        let total: usize = extents.iter().product();
        let dim = extents.len();
        let mut flat = vec![0; total * dim];
        for id in 0..total {
            let mut rest = id;
            for axis in (0..dim).rev() {
                flat[id * dim + axis] = rest % extents[axis];
                rest /= extents[axis];
            }
        }
        Coords { extents, flat }
    }

    pub fn dim(&self) -> usize {
        self.extents.len()
    }

    pub fn extents(&self) -> &[usize] {
        &self.extents
    }

    /// 0-based coordinate tuple of `v`.
    pub fn of(&self, v: Vertex) -> &[usize] {
        let d = self.dim();
        &self.flat[v * d..(v + 1) * d]
    }

    pub fn vertex(&self, coord: &[usize]) -> Option<Vertex> {
        if coord.len() != self.dim() || coord.iter().zip(&self.extents).any(|(c, e)| c >= e) {
            return None;
        }
        Some(coord.iter().zip(&self.extents).fold(0, |acc, (c, e)| acc * e + c))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<Vertex>,
    coords: Option<Coords>,
    family: Family,
}

impl Graph {
    /// Builds a graph from an undirected edge list, rejecting self-loops, duplicate
    /// edges and out-of-range endpoints.
    pub fn from_edges(n_vertices: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        Self::build(n_vertices, edges, None, Family::Custom)
    }

    fn build(
        n_vertices: usize,
        edges: &[(Vertex, Vertex)],
        coords: Option<Coords>,
        family: Family,
    ) -> Result<Self> {
        if n_vertices == 0 {
            return Err(Error::InvalidGraph("a graph needs at least one vertex".into()));
        }
        let mut adjacency: Vec<Vec<Vertex>> = vec![Vec::new(); n_vertices];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n_vertices {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        n_vertices,
                    });
                }
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut offsets = Vec::with_capacity(n_vertices + 1);
        let mut neighbors = Vec::with_capacity(2 * edges.len());
        offsets.push(0);
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {})", w[0])));
            }
            neighbors.extend_from_slice(list);
            offsets.push(neighbors.len());
        }
        Ok(Graph {
            offsets,
            neighbors,
            coords,
            family,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn n_edges(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// Sorted ascending.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn is_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn coords(&self) -> Option<&Coords> {
        self.coords.as_ref()
    }

    /// Each edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n_vertices())
            .flat_map(move |u| self.neighbors(u).iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n_vertices()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n_vertices() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n_vertices: self.n_vertices(),
            })
        }
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(Option::is_some)
    }

    pub fn is_tree(&self) -> bool {
        self.n_edges() + 1 == self.n_vertices() && self.is_connected()
    }

    /// BFS hop counts from `source`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, source: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n_vertices()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or_default();
            for &w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: Vertex, v: Vertex) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.bfs_distances(u)[v].ok_or(Error::Unreachable(u, v))
    }

    /// Parses the edge-list text format: a first line holding the vertex count, then
    /// one `u v` pair per line. Blank lines and `#` lines are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty edge list".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("vertex count: {e}")))?;
        let mut edges = Vec::new();
        for (i, line) in lines.enumerate() {
            let mut parts = line.split_ascii_whitespace();
            let mut field = || -> Result<Vertex> {
                parts
                    .next()
                    .ok_or_else(|| Error::Parse(format!("edge line {}: expected `u v`", i + 2)))?
                    .parse()
                    .map_err(|e| Error::Parse(format!("edge line {}: {e}", i + 2)))
            };
            let (u, v) = (field()?, field()?);
            edges.push((u, v));
        }
        Graph::from_edges(n, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n_vertices());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn read_edge_list(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse_edge_list(&text)
    }
}

pub fn make_path(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::build(n, &edges, None, Family::Path)
}

/// Star with `n` vertices; vertex 0 is the center.
pub fn make_star(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
    Graph::from_edges(n, &edges)
}

/// The ladder `G_{m,n}`: vertex `(j, k)`, `1 <= j <= n`, `1 <= k <= m`, stored with
/// 0-based coordinates `(j-1, k-1)` and id `(j-1) * m + (k-1)`.
pub fn make_grid(m: usize, n: usize) -> Result<Graph> {
    if m == 0 || n == 0 {
        return Err(Error::Precondition("grid sides must be positive".into()));
    }
    let coords = Coords::row_major(vec![n, m]);
    let mut edges = Vec::with_capacity(m * (n - 1) + n * (m - 1));
    for j in 0..n {
        for k in 0..m {
            let id = j * m + k;
            if k + 1 < m {
                edges.push((id, id + 1));
            }
            if j + 1 < n {
                edges.push((id, id + m));
            }
        }
    }
    Graph::build(n * m, &edges, Some(coords), Family::Grid { m, n })
}

pub fn make_torus(dim: usize, side: usize) -> Result<Graph> {
    if side < 3 {
        return Err(Error::Precondition(format!(
            "torus side must be at least 3 (got {side}); smaller sides create parallel edges"
        )));
    }
    if dim == 0 {
        return Err(Error::Precondition("torus dimension must be positive".into()));
    }
    let total = side
        .checked_pow(dim as u32)
        .ok_or_else(|| Error::Precondition("torus too large".into()))?;
    let coords = Coords::row_major(vec![side; dim]);
    let mut edges = Vec::with_capacity(total * dim);
    let mut stride = 1;
    for axis in (0..dim).rev() {
        for id in 0..total {
            let c = coords.of(id)[axis];
            let next = if c + 1 == side { id - c * stride } else { id + stride };
            edges.push((id, next));
        }
        stride *= side;
    }
    Graph::build(total, &edges, Some(coords), Family::Torus { dim, side })
}

/// `(d+1)`-regular tree of depth `k`, numbered breadth-first from the root (vertex 0).
pub fn make_regular_tree(d: usize, k: usize) -> Result<Graph> {
    if d < 2 || k == 0 {
        return Err(Error::Precondition(format!(
            "regular tree needs d >= 2 and k >= 1 (got d={d}, k={k})"
        )));
    }
    let mut edges = Vec::new();
    let mut level: Vec<Vertex> = vec![0];
    let mut next_id = 1;
    for depth in 0..k {
        let fanout = if depth == 0 { d + 1 } else { d };
        let mut next_level = Vec::with_capacity(level.len() * fanout);
        for &parent in &level {
            for _ in 0..fanout {
                edges.push((parent, next_id));
                next_level.push(next_id);
                next_id += 1;
            }
        }
        level = next_level;
    }
    Graph::build(next_id, &edges, None, Family::RegularTree { d, k })
}

/// Named vertices of the barbell tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BarbellVertex {
    X(usize),
    Y(usize),
    Z(usize),
}

impl BarbellVertex {
    /// Vertex id in `make_barbell_tree(n, _)`; indices are 1-based.
    pub fn id(self, n: usize) -> Vertex {
        match self {
            BarbellVertex::X(i) => i - 1,
            BarbellVertex::Y(i) => n + i - 1,
            BarbellVertex::Z(i) => 2 * n + i - 1,
        }
    }
}

/// Path `z_1..z_m` with `n` leaves `x_k` on `z_1` and `n` leaves `y_k` on `z_4`.
pub fn make_barbell_tree(n: usize, m: usize) -> Result<Graph> {
    if m < 5 {
        return Err(Error::Precondition(format!("barbell tree needs m >= 5 (got {m})")));
    }
    if n == 0 {
        return Err(Error::Precondition("barbell tree needs n >= 1".into()));
    }
    use BarbellVertex::{X, Y, Z};
    let mut edges = Vec::with_capacity(2 * n + m - 1);
    for k in 1..m {
        edges.push((Z(k).id(n), Z(k + 1).id(n)));
    }
    for k in 1..=n {
        edges.push((Z(1).id(n), X(k).id(n)));
        edges.push((Z(4).id(n), Y(k).id(n)));
    }
    Graph::build(2 * n + m, &edges, None, Family::Barbell { n, m })
}

/// Custom tree from `n - 1` edges; rejects cycles and disconnected input.
pub fn tree_from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph> {
    if n == 0 || edges.len() + 1 != n {
        return Err(Error::NotATree(format!(
            "{n} vertices need exactly {} edges, got {}",
            n.saturating_sub(1),
            edges.len()
        )));
    }
    let g = Graph::from_edges(n, edges)?;
    if !g.is_connected() {
        return Err(Error::NotATree("edges contain a cycle and leave the graph disconnected".into()));
    }
    Ok(g)
}
