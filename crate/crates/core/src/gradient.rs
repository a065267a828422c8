//! Decreasing lattice path from the peak at `(1,1)` to the far end of a ladder
//! `G_{m,n}`, extracted from a greedy descending tree.
//!
//! The tree starts at `(1,1)` and repeatedly absorbs the largest-id vertex `w`
//! outside it that has a tree neighbor with a larger label; `w` hangs from the
//! largest-id such neighbor. Growth stops as soon as a vertex with first coordinate
//! `n` joins, and the tree path to it is returned.

use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::{Family, Graph, Vertex};
use crate::labeling::{peaks, Labeling};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradientPath {
    pub path: Vec<Vertex>,
}

impl GradientPath {
    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }
}

/// Requires `g = make_grid(m, n)` and a labeling whose only peak is `(1,1)`
/// (vertex 0).
pub fn gradient_path(g: &Graph, labeling: &Labeling) -> Result<GradientPath> {
    let Family::Grid { m, n } = g.family() else {
        return Err(Error::Precondition("gradient paths are defined on ladder grids only".into()));
    };
    let peak_set = peaks(g, labeling)?;
    if peak_set.peaks != [0] {
        return Err(Error::Precondition(format!(
            "labeling must have the single peak (1,1); peaks are {:?}",
            peak_set.peaks
        )));
    }
    Ok(gradient_path_unchecked(g, labeling, m, n))
}

/// Same construction without re-validating the premise.
pub(crate) fn gradient_path_unchecked(g: &Graph, labeling: &Labeling, m: usize, n: usize) -> GradientPath {
    let total = g.n_vertices();
    let far_end = |v: Vertex| v / m == n - 1;
    let mut in_tree = vec![false; total];
    let mut queued = vec![false; total];
    let mut parent = vec![usize::MAX; total];
    let mut eligible = BinaryHeap::new();

    let mut admit = |v: Vertex, in_tree: &mut Vec<bool>, eligible: &mut BinaryHeap<Vertex>| {
        in_tree[v] = true;
        for &w in g.neighbors(v) {
            if !in_tree[w] && !queued[w] && labeling.label(w) < labeling.label(v) {
                queued[w] = true;
                eligible.push(w);
            }
        }
    };

    admit(0, &mut in_tree, &mut eligible);
    let mut last = 0;
    if !far_end(0) {
        // a single peak guarantees the tree eventually spans the grid
        while let Some(w) = eligible.pop() {
            let lw = labeling.label(w);
            let attach = g
                .neighbors(w)
                .iter()
                .copied()
                .filter(|&v| in_tree[v] && labeling.label(v) > lw)
                .max()
                .expect("eligible vertex has a larger tree neighbor");
            parent[w] = attach;
            admit(w, &mut in_tree, &mut eligible);
            if far_end(w) {
                last = w;
                break;
            }
        }
    }
    let mut path = vec![last];
    let mut cur = last;
    while cur != 0 {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    GradientPath { path }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_grid;

    #[test]
    fn line_gives_whole_line() {
        let g = make_grid(1, 7).unwrap();
        let l = Labeling::from_labels((1..=7).rev().collect()).unwrap();
        let p = gradient_path(&g, &l).unwrap();
        assert_eq!(p.path, (0..7).collect::<Vec<_>>());
    }

    #[test]
    fn two_by_two_hand_trace() {
        // ids: (1,1)=0, (1,2)=1, (2,1)=2, (2,2)=3
        let g = make_grid(2, 2).unwrap();
        let l = Labeling::from_labels(vec![4, 2, 3, 1]).unwrap();
        let p = gradient_path(&g, &l).unwrap();
        assert_eq!(p.path, vec![0, 2]);
    }

    #[test]
    fn rejects_wrong_peak() {
        let g = make_grid(2, 3).unwrap();
        let l = Labeling::from_labels(vec![1, 2, 3, 4, 5, 6]).unwrap();
        assert!(gradient_path(&g, &l).is_err());
    }

    #[test]
    fn single_column() {
        let g = make_grid(3, 1).unwrap();
        let l = Labeling::from_labels(vec![3, 2, 1]).unwrap();
        assert_eq!(gradient_path(&g, &l).unwrap().path, vec![0]);
    }

    #[test]
    fn detour_through_second_rung() {
        // 2x3 ladder; ids (j,k) -> 2(j-1)+(k-1)
        // labels: (1,1)=6 (1,2)=5 (2,1)=1 (2,2)=4 (3,1)=2 (3,2)=3
        let g = make_grid(2, 3).unwrap();
        let l = Labeling::from_labels(vec![6, 5, 1, 4, 2, 3]).unwrap();
        let p = gradient_path(&g, &l).unwrap();
        // tree: 0; eligible {1,2} -> 2 joins (parent 0); eligible {1}; 1 joins;
        // 3 (label 4 < 5) joins under 1; 5 (3 < 4) joins under 3 -> far end
        assert_eq!(p.path, vec![0, 1, 3, 5]);
        assert!(p.path.windows(2).all(|w| l.label(w[0]) > l.label(w[1])));
    }
}
