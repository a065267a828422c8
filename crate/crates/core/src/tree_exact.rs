//! Exact single-peak and twin-peak probabilities on trees.
//!
//! A labeling of a tree has its only peak at `x` exactly when labels decrease
//! away from `x`, so the probability is `1 / prod_z n_x(z)`, with `n_x(z)` the
//! descendant count of `z` in the tree hung from `x`. The product is called the
//! hook product below.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, product_of, ExactCount, ExactProb};
use crate::graph::{make_regular_tree, tree_from_edges, Graph, Vertex};
use crate::tree::{require_tree, rooted_index, rooted_index_unchecked};

/// `prod_z n_x(z)`.
pub fn hook_product(g: &Graph, x: Vertex) -> Result<BigUint> {
    let idx = rooted_index(g, x)?;
    Ok(product_of(&idx.desc_counts().iter().map(|&c| c as u64).collect::<Vec<_>>()))
}

/// Hook products for every vertex, by rerooting from vertex 0 across each edge:
/// moving the root from `p` to its child `c` multiplies the product by
/// `(N - s) / s`, `s` being the size of the subtree at `c`.
pub fn hook_products_all(g: &Graph) -> Result<Vec<BigUint>> {
    require_tree(g)?;
    let n = g.n_vertices();
    let idx = rooted_index_unchecked(g, 0);
    let mut out = vec![BigUint::zero(); n];
    out[0] = product_of(&idx.desc_counts().iter().map(|&c| c as u64).collect::<Vec<_>>());
    for &v in &idx.bfs_order()[1..] {
        let p = idx.parent(v).expect("non-root vertex has a parent");
        let s = idx.desc_count(v);
        let scaled = &out[p] * BigUint::from(n - s);
        let (q, r) = scaled.div_rem(&BigUint::from(s));
        if !r.is_zero() {
            return Err(Error::Internal("rerooted hook product is not an integer".into()));
        }
        out[v] = q;
    }
    Ok(out)
}

/// `P(N(G,1) ∩ {K = x})`.
pub fn single_peak_prob_at(g: &Graph, x: Vertex) -> Result<ExactProb> {
    ExactProb::reciprocal_of(hook_product(g, x)?)
}

/// Number of labelings whose only peak is `x`: `N! / prod_z n_x(z)`.
pub fn single_peak_count_at(g: &Graph, x: Vertex) -> Result<ExactCount> {
    let hooks = hook_product(g, x)?;
    let (q, r) = factorial(g.n_vertices()).div_rem(&hooks);
    if !r.is_zero() {
        return Err(Error::Internal(format!("N!/hook product is not an integer at {x}")));
    }
    Ok(ExactCount(q))
}

/// `P(peak at x) / P(peak at y)` for adjacent `x`, `y`:
/// `(n_x(x) - n_x(y)) / n_x(y)`.
pub fn adjacent_ratio(g: &Graph, x: Vertex, y: Vertex) -> Result<BigRational> {
    g.check_vertex(y)?;
    if !g.is_adjacent(x, y) {
        return Err(Error::NotAnEdge(x, y));
    }
    let idx = rooted_index(g, x)?;
    let nx = idx.desc_count(x);
    let ny = idx.desc_count(y);
    Ok(BigRational::new(BigInt::from(nx - ny), BigInt::from(ny)))
}

/// Vertices maximizing the single-peak probability, ascending.
pub fn argmax_single_peak(g: &Graph) -> Result<Vec<Vertex>> {
    let hooks = hook_products_all(g)?;
    let best = hooks.iter().min().expect("nonempty graph");
    Ok(g.vertices().filter(|&v| &hooks[v] == best).collect())
}

/// `(d+1)(d^k-1)/(d-1) + 1`.
pub fn regular_tree_size(d: usize, k: usize) -> ExactCount {
    let d = BigUint::from(d);
    let one = BigUint::one();
    ExactCount((&d + &one) * (Pow::pow(&d, k as u32) - &one) / (&d - &one) + one)
}

/// Number of vertices at distance at least 2 from the root: `(d^k - d)(d+1)/(d-1)`.
pub fn regular_tree_far_count(d: usize, k: usize) -> ExactCount {
    let d = BigUint::from(d);
    let one = BigUint::one();
    ExactCount((Pow::pow(&d, k as u32) - &d) * (&d + &one) / (&d - one))
}

/// Checks `P_1(K = v*) >= (d-1)^{m(m+1)/2} P_1(K = x)` for every vertex `x` at
/// distance `m >= 1` from the root of the `(d+1)`-regular tree of depth `k`.
pub fn sharpened_ratio_bound_check(d: usize, k: usize) -> Result<bool> {
    Ok(sharpened_ratio_violations(d, k)?.is_empty())
}

/// Vertices where the sharpened ratio bound fails.
pub fn sharpened_ratio_violations(d: usize, k: usize) -> Result<Vec<Vertex>> {
    let g = make_regular_tree(d, k)?;
    let idx = rooted_index(&g, 0)?;
    let root_hooks = hook_product(&g, 0)?;
    let base = BigUint::from(d - 1);
    let mut bad = Vec::new();
    for x in 1..g.n_vertices() {
        let m = idx.depth(x) as u32;
        // P(v*) >= c P(x)  <=>  hook(x) >= c hook(v*)
        let c = Pow::pow(&base, m * (m + 1) / 2);
        if hook_product(&g, x)? < c * &root_hooks {
            bad.push(x);
        }
    }
    Ok(bad)
}

/// `prod_j base_j^{exp_j}`, kept factored because the exponents of large regular
/// trees run into the quadrillions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInteger {
    pub factors: Vec<(BigUint, BigUint)>,
}

impl FactoredInteger {
    pub fn log10(&self) -> f64 {
        self.factors
            .iter()
            .map(|(b, e)| crate::exact::log10_big(b) * num_traits::ToPrimitive::to_f64(e).unwrap_or(f64::INFINITY))
            .sum()
    }

    /// Bit-length bound of the expanded value.
    pub fn bits_upper_bound(&self) -> Option<u64> {
        let mut total: u64 = 0;
        for (b, e) in &self.factors {
            let e = num_traits::ToPrimitive::to_u64(e)?;
            total = total.checked_add(b.bits().checked_mul(e)?)?;
        }
        Some(total)
    }

    /// Expanded value, or `None` past `max_bits`.
    pub fn expand(&self, max_bits: u64) -> Option<BigUint> {
        if self.bits_upper_bound()? > max_bits {
            return None;
        }
        let mut acc = BigUint::one();
        for (b, e) in &self.factors {
            let e = num_traits::ToPrimitive::to_u64(e)?;
            acc *= Pow::pow(b, e);
        }
        Some(acc)
    }
}

/// One side of the twin-peak comparison: `1 / (distinct · common)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinProduct {
    /// Denominators of the three factors that differ between the two events.
    pub distinct: [BigUint; 3],
    /// Denominator shared by both events (root factor and all remaining vertices).
    pub common: Arc<FactoredInteger>,
}

impl TwinProduct {
    pub fn distinct_prob(&self) -> ExactProb {
        let d = &self.distinct[0] * &self.distinct[1] * &self.distinct[2];
        ExactProb::reciprocal_of(d).expect("distinct factors are positive")
    }

    /// The full probability, when its denominator fits in `max_bits` bits.
    pub fn exact(&self, max_bits: u64) -> Option<ExactProb> {
        let common = self.common.expand(max_bits)?;
        Some(self.distinct_prob().mul(&ExactProb::reciprocal_of(common).ok()?))
    }

    pub fn log10(&self) -> f64 {
        self.distinct_prob().log10() - self.common.log10()
    }
}

/// Both five-factor products for the `(d+1)`-regular tree of depth `k`, with
/// `y1`, `y2` children of the root and `y3` a child of `y2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinFactors {
    pub d: usize,
    pub k: usize,
    /// `P(N(G,2) ∩ {K1 = v*, K2 = y3})`.
    pub lhs: TwinProduct,
    /// `P(N(G,2) ∩ {K1 = y1, K2 = y2})`.
    pub rhs: TwinProduct,
    pub inequality_holds: bool,
    /// `-(d-1)(d^k(d^k - d - 1) + 1)`.
    pub polynomial_value: BigInt,
}

/// Named vertices used by the twin-factor products on `make_regular_tree(d, k)`:
/// `(v*, y1, y2, y3)` = root, its first two children, and the first child of `y2`.
pub fn twin_vertices(d: usize) -> (Vertex, Vertex, Vertex, Vertex) {
    // breadth-first numbering: root 0, children 1..=d+1, children of vertex 2 start
    // after the d children of vertex 1
    (0, 1, 2, d + 2 + d)
}

pub fn twin_factor_products(d: usize, k: usize) -> Result<TwinFactors> {
    if d < 2 || k < 2 {
        return Err(Error::Precondition(format!("twin factors need d >= 2, k >= 2 (got {d}, {k})")));
    }
    let big = |v: usize| BigUint::from(v);
    let one = BigUint::one();
    let dd = big(d);
    let pow = |e: usize| Pow::pow(&dd, e as u32);
    let dm1 = &dd - &one;
    let arm = (pow(k) - &one) / &dm1; // subtree of a root child
    let arm_child = (pow(k - 1) - &one) / &dm1; // subtree of a depth-2 vertex
    let total = (&dd + &one) * &arm + &one;

    let lhs_distinct = [arm.clone(), pow(k - 1), arm.clone()];
    let rhs_distinct = [&dd * &arm + &one, pow(k), arm_child];

    // common: N * prod over depth j of s_j^{count_j}, minus y1, y2 (depth 1), y3 (depth 2)
    let mut factors = vec![(total, one.clone())];
    for j in 1..=k {
        let size = (pow(k - j + 1) - &one) / &dm1;
        let mut count = (&dd + &one) * pow(j - 1);
        if j == 1 {
            count -= 2u32;
        } else if j == 2 {
            count -= 1u32;
        }
        if size > one && !count.is_zero() {
            factors.push((size, count));
        }
    }
    let common = Arc::new(FactoredInteger { factors });

    let lhs = TwinProduct {
        distinct: lhs_distinct,
        common: Arc::clone(&common),
    };
    let rhs = TwinProduct {
        distinct: rhs_distinct,
        common,
    };
    let inequality_holds = lhs.distinct_prob() > rhs.distinct_prob();

    let di = BigInt::from(d);
    let dk = Pow::pow(&di, k as u32);
    let one_i = BigInt::one();
    let polynomial_value: BigInt = -((&di - &one_i) * (&dk * (&dk - &di - &one_i) + &one_i));

    Ok(TwinFactors {
        d,
        k,
        lhs,
        rhs,
        inequality_holds,
        polynomial_value,
    })
}

/// The six subtree sizes entering the distinct factors, measured on the generated
/// tree: `[|V'|, n^{G'}_{y3}(y2), n_{v*}(y1)]` and `[|V''|, n^{G''}_{y2}(v*), n_{v*}(y3)]`.
pub fn twin_sizes_from_tree(d: usize, k: usize) -> Result<([usize; 3], [usize; 3])> {
    let g = make_regular_tree(d, k)?;
    let (root, y1, y2, y3) = twin_vertices(d);
    let rooted = rooted_index(&g, root)?;
    if rooted.parent(y3) != Some(y2) || rooted.parent(y1) != Some(root) || rooted.parent(y2) != Some(root) {
        return Err(Error::Internal("twin vertices misplaced".into()));
    }

    // G' = component of y3 after deleting the root
    let g_prime = induced_without(&g, root, y3)?;
    let n_y3_y2 = rooted_index(&g_prime.graph, g_prime.local(y3))?.desc_count(g_prime.local(y2));
    // G'' = component of y2 after deleting y1
    let g_second = induced_without(&g, y1, y2)?;
    let n_y2_root = rooted_index(&g_second.graph, g_second.local(y2))?.desc_count(g_second.local(root));

    Ok((
        [g_prime.graph.n_vertices(), n_y3_y2, rooted.desc_count(y1)],
        [g_second.graph.n_vertices(), n_y2_root, rooted.desc_count(y3)],
    ))
}

struct Induced {
    graph: Graph,
    local_id: Vec<Option<usize>>,
}

impl Induced {
    fn local(&self, v: Vertex) -> usize {
        self.local_id[v].expect("vertex inside the induced subtree")
    }
}

/// Component containing `keep` after deleting `removed`, as a standalone tree.
fn induced_without(g: &Graph, removed: Vertex, keep: Vertex) -> Result<Induced> {
    let mut local_id = vec![None; g.n_vertices()];
    let mut members = vec![keep];
    local_id[keep] = Some(0);
    let mut i = 0;
    while i < members.len() {
        let u = members[i];
        for &w in g.neighbors(u) {
            if w != removed && local_id[w].is_none() {
                local_id[w] = Some(members.len());
                members.push(w);
            }
        }
        i += 1;
    }
    let edges: Vec<_> = members
        .iter()
        .flat_map(|&u| {
            let local_id = &local_id;
            g.neighbors(u)
                .iter()
                .filter(move |&&w| w != removed && w > u)
                .map(move |&w| (local_id[u].unwrap(), local_id[w].unwrap()))
        })
        .collect();
    Ok(Induced {
        graph: tree_from_edges(members.len(), &edges)?,
        local_id,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_path, make_star};
    use crate::tree::centroids;

    fn frac(p: &ExactProb) -> String {
        p.to_string()
    }

    #[test]
    fn path4_single_peak() {
        let g = make_path(4).unwrap();
        let probs: Vec<_> = (0..4).map(|x| frac(&single_peak_prob_at(&g, x).unwrap())).collect();
        assert_eq!(probs, vec!["1/24", "1/8", "1/8", "1/24"]);
        let counts: Vec<_> = (0..4).map(|x| single_peak_count_at(&g, x).unwrap().to_u64().unwrap()).collect();
        assert_eq!(counts, vec![1, 3, 3, 1]);
        assert_eq!(argmax_single_peak(&g).unwrap(), vec![1, 2]);
        assert_eq!(argmax_single_peak(&make_path(5).unwrap()).unwrap(), vec![2]);
    }

    #[test]
    fn star_and_single_vertex() {
        let s = make_star(7).unwrap();
        assert_eq!(single_peak_prob_at(&s, 0).unwrap().to_string(), "1/7");
        assert_eq!(adjacent_ratio(&s, 0, 3).unwrap(), BigRational::from_integer(6.into()));
        let one = make_path(1).unwrap();
        assert_eq!(single_peak_count_at(&one, 0).unwrap().to_u64(), Some(1));
    }

    #[test]
    fn adjacent_ratio_examples() {
        let g = make_path(4).unwrap();
        assert!(adjacent_ratio(&g, 1, 2).unwrap().is_one());
        assert!(matches!(adjacent_ratio(&g, 0, 2), Err(Error::NotAnEdge(0, 2))));
        for (x, y) in g.edges().flat_map(|(a, b)| [(a, b), (b, a)]) {
            let direct = single_peak_prob_at(&g, x).unwrap().to_rational() / single_peak_prob_at(&g, y).unwrap().to_rational();
            assert_eq!(adjacent_ratio(&g, x, y).unwrap(), direct);
        }
    }

    #[test]
    fn rerooting_matches_direct_products() {
        for g in [make_regular_tree(2, 3).unwrap(), make_star(6).unwrap(), make_path(7).unwrap()] {
            let all = hook_products_all(&g).unwrap();
            for x in g.vertices() {
                assert_eq!(all[x], hook_product(&g, x).unwrap());
            }
            assert_eq!(argmax_single_peak(&g).unwrap(), centroids(&g).unwrap());
        }
    }

    #[test]
    fn regular_tree_counts() {
        assert_eq!(regular_tree_size(3, 2).to_u64(), Some(17));
        assert_eq!(regular_tree_size(2, 1).to_u64(), Some(4));
        assert_eq!(regular_tree_size(3, 8).to_u64(), Some(13121));
        let g = make_regular_tree(3, 3).unwrap();
        let dist = g.bfs_distances(0);
        let far = dist.iter().filter(|d| d.unwrap() >= 2).count() as u64;
        assert_eq!(regular_tree_far_count(3, 3).to_u64(), Some(far));
    }

    #[test]
    fn sharpened_ratio_examples() {
        assert!(sharpened_ratio_bound_check(3, 2).unwrap());
        assert!(sharpened_ratio_bound_check(2, 3).unwrap());
        assert!(sharpened_ratio_bound_check(4, 1).unwrap());
    }

    #[test]
    fn twin_polynomial_examples() {
        let t = twin_factor_products(3, 2).unwrap();
        assert_eq!(t.polynomial_value, BigInt::from(-92));
        assert!(t.inequality_holds);
        let t = twin_factor_products(2, 2).unwrap();
        assert_eq!(t.polynomial_value, BigInt::from(-5));
        assert!(twin_factor_products(3, 1).is_err());
    }

    #[test]
    fn twin_closed_forms_match_measured_sizes() {
        for (d, k) in [(2, 2), (2, 4), (3, 2), (3, 4), (5, 3)] {
            let t = twin_factor_products(d, k).unwrap();
            let (l, r) = twin_sizes_from_tree(d, k).unwrap();
            let as_big = |a: [usize; 3]| a.map(BigUint::from);
            assert_eq!(t.lhs.distinct, as_big(l), "lhs d={d} k={k}");
            assert_eq!(t.rhs.distinct, as_big(r), "rhs d={d} k={k}");
        }
    }

    #[test]
    fn twin_common_factor_matches_tree() {
        // common denominator = N * prod_{x != v*, y1, y2, y3} n_{v*}(x)
        for (d, k) in [(2, 2), (3, 3)] {
            let g = make_regular_tree(d, k).unwrap();
            let (r, y1, y2, y3) = twin_vertices(d);
            let idx = rooted_index(&g, r).unwrap();
            let mut f: Vec<u64> = vec![g.n_vertices() as u64];
            f.extend(g.vertices().filter(|v| ![r, y1, y2, y3].contains(v)).map(|v| idx.desc_count(v) as u64));
            let t = twin_factor_products(d, k).unwrap();
            assert_eq!(t.lhs.common.expand(1 << 20).unwrap(), product_of(&f));
        }
    }
}
