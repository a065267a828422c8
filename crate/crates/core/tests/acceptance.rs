// Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{Signed, Zero};

use graph_peaks::cluster::cluster_trace;
use graph_peaks::exact::{factorial, ExactProb};
use graph_peaks::gradient::gradient_path;
use graph_peaks::graph::{make_barbell_tree, make_grid, make_path, make_regular_tree, make_torus, Graph};
use graph_peaks::mcmc::{run_chain, McmcConfig, PeakConstraint};
use graph_peaks::oracle::{
    conditional_statistic, conditional_top_locations, enumerate_peak_counts, growth_vs_uniform_discrepancy, tally,
    EnumerationOptions, OutcomeKey, Statistic,
};
use graph_peaks::rng::RngStream;
use graph_peaks::samplers::{canonical_single_peak, eden_growth, rejection_conditioned, sequential_growth_labeling};
use graph_peaks::tree::{centroids, rooted_index};
use graph_peaks::tree_exact::{
    argmax_single_peak, regular_tree_far_count, regular_tree_size, sharpened_ratio_bound_check, single_peak_count_at,
    twin_factor_products, twin_sizes_from_tree, twin_vertices,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() < limit, || format!("took {:?}, limit {limit:?}", start.elapsed()))
}

fn exact_single_peak_vs_oracle() -> Outcome {
    let start = Instant::now();
    let suite = common::tree_suite();
    let mut checked = 0;
    for (name, g) in &suite {
        let oracle = tally(g, EnumerationOptions::default(), |v| {
            (v.peak_count() == 1).then(|| v.peaks().next().unwrap())
        })
        .map_err(|e| e.to_string())?;
        let naive = common::naive_peak_sets(g);
        for x in g.vertices() {
            let formula = single_peak_count_at(g, x).map_err(|e| e.to_string())?.to_u64().unwrap();
            let o = oracle.get(&x).copied().unwrap_or(0);
            let n = naive.get(&vec![x]).copied().unwrap_or(0);
            ensure(formula == o && o == n, || format!("{name} x={x}: formula {formula}, oracle {o}, naive {n}"))?;
            checked += 1;
        }
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("{} trees, {checked} vertices, {:.2?}", suite.len(), start.elapsed()))
}

fn three_realizations_on_path4() -> Outcome {
    let g = make_path(4).unwrap();
    let d = growth_vs_uniform_discrepancy(&g, 1).map_err(|e| e.to_string())?;
    let pa = d.uniform.probability(&OutcomeKey::Vertex(0));
    let pc = d.uniform.probability(&OutcomeKey::Vertex(2));
    let third = ExactProb::new(1u32, 3u32).unwrap();
    let two_thirds = ExactProb::new(2u32, 3u32).unwrap();
    ensure(pa == third && pc == two_thirds, || format!("uniform law {pa} / {pc}"))?;

    let half = ExactProb::new(1u32, 2u32).unwrap();
    ensure(d.sequential.get(&0) == Some(&half) && d.sequential.get(&2) == Some(&half), || {
        format!("exact growth law {:?}", d.sequential)
    })?;

    let draws = 100_000;
    let mut rng = RngStream::new(2, 0);
    let mut at_a = 0u64;
    for _ in 0..draws {
        let l = sequential_growth_labeling(&g, 1, &mut rng).map_err(|e| e.to_string())?;
        ensure(common::naive_peaks(&g, l.labels()) == [1], || "sequential labeling with extra peaks".into())?;
        match l.vertex_with(3) {
            0 => at_a += 1,
            2 => {}
            v => return Err(format!("label 3 at vertex {v}")),
        }
    }
    let p = at_a as f64 / draws as f64;
    let se = (0.25 / draws as f64).sqrt();
    ensure((p - 0.5).abs() <= 3.0 * se, || format!("sequential P(R(3)=a) = {p}, 3 SE = {}", 3.0 * se))?;
    Ok(format!("uniform 1/3, 2/3 exact; sequential {p:.4} (3 SE {:.4})", 3.0 * se))
}

fn centroid_maximizers() -> Outcome {
    let suite = common::tree_suite();
    let mut two = 0;
    for (name, g) in &suite {
        let arg = argmax_single_peak(g).map_err(|e| e.to_string())?;
        let cen = centroids(g).map_err(|e| e.to_string())?;
        // centroid by definition: largest component after removal is at most N/2
        let n = g.n_vertices();
        let brute: Vec<_> = g
            .vertices()
            .filter(|&x| {
                let idx = rooted_index(g, x).unwrap();
                let balanced = idx.children(g, x).all(|c| 2 * idx.desc_count(c) <= n);
                balanced
            })
            .collect();
        ensure(arg == cen && cen == brute, || format!("{name}: argmax {arg:?}, centroids {cen:?}, brute {brute:?}"))?;
        ensure(matches!(cen.len(), 1 | 2), || format!("{name}: {} centroids", cen.len()))?;
        if cen.len() == 2 {
            ensure(g.is_adjacent(cen[0], cen[1]), || format!("{name}: centroids {cen:?} not adjacent"))?;
            two += 1;
        }
    }
    Ok(format!("{} trees, {two} with two adjacent centroids", suite.len()))
}

fn regular_tree_formulas() -> Outcome {
    let mut checked = 0;
    for d in 2..=10 {
        for k in 1..=6 {
            let g = make_regular_tree(d, k).map_err(|e| e.to_string())?;
            let size = regular_tree_size(d, k);
            ensure(size.to_u64() == Some(g.n_vertices() as u64), || {
                format!("d={d} k={k}: formula {size} vs {} vertices", g.n_vertices())
            })?;
            let far = g.bfs_distances(0).iter().filter(|dist| dist.unwrap() >= 2).count();
            let closed = regular_tree_far_count(d, k);
            ensure(closed.to_u64() == Some(far as u64), || format!("d={d} k={k}: far count {closed} vs {far}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (d, k) pairs"))
}

fn twin_peak_chain() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for d in 3..=20 {
        for k in 2..=12 {
            let t = twin_factor_products(d, k).map_err(|e| e.to_string())?;
            ensure(t.inequality_holds, || format!("d={d} k={k}: inequality fails"))?;
            ensure(t.lhs.common == t.rhs.common, || format!("d={d} k={k}: common factors differ"))?;
            // lhs > rhs  <=>  prod(rhs denominators) > prod(lhs denominators)
            let prod = |xs: &[BigUint; 3]| xs.iter().product::<BigUint>();
            let lhs_bigger = prod(&t.rhs.distinct) > prod(&t.lhs.distinct);
            let poly_negative = t.polynomial_value.is_negative();
            ensure(lhs_bigger == poly_negative && !t.polynomial_value.is_zero(), || {
                format!("d={d} k={k}: lhs>rhs is {lhs_bigger}, polynomial {}", t.polynomial_value)
            })?;
            let dk = (d as i128).pow(k as u32);
            let poly = -((d as i128) - 1) * (dk * (dk - d as i128 - 1) + 1);
            ensure(t.polynomial_value == poly.into(), || format!("d={d} k={k}: polynomial {}", t.polynomial_value))?;
            checked += 1;
        }
    }
    within(start, Duration::from_secs(30))?;
    let sweep_time = start.elapsed();

    for (d, k) in [(3, 2), (3, 3), (4, 2), (2, 3)] {
        let (l, r) = twin_sizes_from_tree(d, k).map_err(|e| e.to_string())?;
        let t = twin_factor_products(d, k).unwrap();
        let as_big = |xs: [usize; 3]| xs.map(BigUint::from);
        ensure(as_big(l) == t.lhs.distinct && as_big(r) == t.rhs.distinct, || {
            format!("d={d} k={k}: tree sizes {l:?} {r:?} vs closed forms")
        })?;
    }

    let g = make_regular_tree(2, 2).unwrap();
    let (root, _, _, y3) = twin_vertices(2);
    let table = conditional_top_locations(&g, 2).map_err(|e| e.to_string())?;
    let count = table.support.get(&OutcomeKey::Pair(root, y3)).map(|c| c.value().clone()).unwrap_or_default();
    let oracle = ExactProb::new(count, factorial(10)).map_err(|e| e.to_string())?;
    let lhs = twin_factor_products(2, 2).unwrap().lhs.exact(4096).unwrap();
    let d2 = if lhs == oracle {
        format!("d=2 k=2 factorization PASS ({lhs})")
    } else {
        format!("d=2 k=2 factorization mismatch: lhs {lhs} vs oracle {oracle}, factorization documented for d>=3")
    };
    Ok(format!("{checked} (d, k) pairs in {sweep_time:.2?}; {d2}"))
}

fn sharpened_ratios() -> Outcome {
    for d in 2..=6 {
        for k in 1..=4 {
            ensure(sharpened_ratio_bound_check(d, k).map_err(|e| e.to_string())?, || format!("d={d} k={k} fails"))?;
        }
    }
    Ok("20 (d, k) pairs".into())
}

fn mcmc_case(name: &str, g: &Graph, k: usize, seed: u64) -> Result<f64, String> {
    let start = Instant::now();
    let exact = conditional_top_locations(g, k).map_err(|e| e.to_string())?;
    let exact: BTreeMap<String, f64> = exact.probabilities().into_iter().map(|(k, p)| (k.to_string(), p.to_f64())).collect();
    let mut rng = RngStream::new(seed, 0);
    let init = rejection_conditioned(g, k, &mut rng.substream(1), 1_000_000).map_err(|e| e.to_string())?;
    let cfg = McmcConfig::for_steps(g.n_vertices(), 1_000_000).map_err(|e| e.to_string())?;
    let mut keys = Vec::new();
    run_chain(g, &init, PeakConstraint::Count(k), &cfg, &mut rng, |c| {
        let mut p = c.peaks();
        p.sort_unstable_by_key(|&v| std::cmp::Reverse(c.labels()[v]));
        keys.push(if k == 1 { OutcomeKey::Vertex(p[0]) } else { OutcomeKey::Pair(p[0], p[1]) });
    })
    .map_err(|e| e.to_string())?;
    let tv = common::total_variation(&common::empirical(keys), &exact);
    within(start, Duration::from_secs(300)).map_err(|e| format!("{name}: {e}"))?;
    ensure(tv <= 0.02, || format!("{name}: TV {tv}"))?;
    Ok(tv)
}

fn mcmc_validity() -> Outcome {
    let cases = [
        ("path4 k=1", make_path(4).unwrap(), 1),
        ("path4 k=2", make_path(4).unwrap(), 2),
        ("path5 k=1", make_path(5).unwrap(), 1),
        ("grid3x3 k=1", make_grid(3, 3).unwrap(), 1),
    ];
    let mut parts = Vec::new();
    for (i, (name, g, k)) in cases.iter().enumerate() {
        let tv = mcmc_case(name, g, *k, 700 + i as u64)?;
        parts.push(format!("{name} TV {tv:.4}"));
    }
    Ok(parts.join(", "))
}

fn structural_invariants() -> Outcome {
    let torus = make_torus(2, 8).unwrap();
    let init = canonical_single_peak(&torus, 0).unwrap();
    let cfg = McmcConfig::for_samples(torus.n_vertices(), 100);
    let mut samples = Vec::new();
    run_chain(&torus, &init, PeakConstraint::Count(1), &cfg, &mut RngStream::new(8, 0), |c| samples.push(c.labeling()))
        .map_err(|e| e.to_string())?;
    ensure(samples.len() == 100, || format!("{} torus samples", samples.len()))?;
    for (i, l) in samples.iter().enumerate() {
        ensure(common::naive_peaks(&torus, l.labels()).len() == 1, || format!("torus sample {i} has several peaks"))?;
        let trace = cluster_trace(&torus, l).map_err(|e| e.to_string())?;
        for k in 0..torus.n_vertices() {
            ensure(trace.connected[k] && common::connected_subset(&torus, trace.cluster(k)), || {
                format!("torus sample {i}: C_{k} disconnected")
            })?;
        }
    }

    let (m, n) = (3, 50);
    let grid = make_grid(m, n).unwrap();
    let init = canonical_single_peak(&grid, 0).unwrap();
    let cfg = McmcConfig::for_samples(grid.n_vertices(), 100);
    let mut paths = Vec::new();
    run_chain(&grid, &init, PeakConstraint::Pinned(0), &cfg, &mut RngStream::new(8, 1), |c| {
        paths.push((c.labeling(), gradient_path(&grid, &c.labeling())))
    })
    .map_err(|e| e.to_string())?;
    ensure(paths.len() == 100, || format!("{} gradient samples", paths.len()))?;
    let mut shortest = usize::MAX;
    for (i, (l, path)) in paths.iter().enumerate() {
        let path = &path.as_ref().map_err(|e| e.to_string())?.path;
        shortest = shortest.min(path.len());
        ensure(path.len() >= n, || format!("path {i} has {} vertices", path.len()))?;
        ensure(path[0] == 0 && path.last().unwrap() / m == n - 1, || format!("path {i} endpoints"))?;
        let mut seen = vec![false; grid.n_vertices()];
        for w in path.windows(2) {
            ensure(grid.is_adjacent(w[0], w[1]), || format!("path {i}: {} {} not adjacent", w[0], w[1]))?;
            ensure(l.label(w[0]) > l.label(w[1]), || format!("path {i}: labels not decreasing"))?;
        }
        for &v in path {
            ensure(!seen[v], || format!("path {i} revisits {v}"))?;
            seen[v] = true;
        }
    }
    Ok(format!("100 torus samples connected; 100 gradient paths, shortest {shortest}"))
}

fn eden_model() -> Outcome {
    let g = make_torus(2, 30).unwrap();
    let n = g.n_vertices();
    let start = 465;
    let trace = eden_growth(&g, start, n - 1, &mut RngStream::new(9, 0)).map_err(|e| e.to_string())?;
    ensure(trace.len() == n && !trace.truncated, || format!("grew {} of {n}", trace.len()))?;
    ensure(trace.addition_order[0] == start, || "wrong seed vertex".into())?;
    let mut inside = vec![false; n];
    for (k, &v) in trace.addition_order.iter().enumerate() {
        ensure(!inside[v], || format!("vertex {v} attached twice"))?;
        ensure(k == 0 || g.neighbors(v).iter().any(|&w| inside[w]), || format!("step {k} attaches a non-neighbor"))?;
        inside[v] = true;
        let cluster = trace.cluster(k);
        ensure(cluster.len() == k + 1, || format!("|C_{k}| = {}", cluster.len()))?;
        ensure(trace.connected[k], || format!("C_{k} flagged disconnected"))?;
        if k % 37 == 0 {
            ensure(common::connected_subset(&g, cluster), || format!("C_{k} disconnected"))?;
        }
        let boundary = common::outer_boundary(&g, cluster);
        ensure(trace.boundary_size[k] == boundary, || format!("boundary at {k}: {} vs {boundary}", trace.boundary_size[k]))?;
    }
    let replay = eden_growth(&g, start, n - 1, &mut RngStream::new(9, 0)).unwrap();
    ensure(replay == trace, || "replay differs".into())?;
    let other = eden_growth(&g, start, n - 1, &mut RngStream::new(9, 1)).unwrap();
    ensure(other != trace, || "different stream gave the same growth".into())?;
    Ok(format!("{n} steps, max boundary {}, replay identical", trace.max_boundary()))
}

fn barbell_oracle() -> Outcome {
    let start = Instant::now();
    let g = make_barbell_tree(2, 5).unwrap();
    ensure(g.n_vertices() == 9, || format!("{} vertices", g.n_vertices()))?;
    let table = conditional_top_locations(&g, 2).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(300))?;
    let table_time = start.elapsed();

    let counts = enumerate_peak_counts(&g).map_err(|e| e.to_string())?;
    ensure(table.total() == counts.count(2), || format!("table total {} vs {}", table.total(), counts.count(2)))?;
    let location = conditional_statistic(&g, 2, &Statistic::PeakLocation).map_err(|e| e.to_string())?;
    let first: BTreeMap<OutcomeKey, _> =
        table.pair_marginal(true).into_iter().map(|(v, c)| (OutcomeKey::Vertex(v), c)).collect();
    ensure(first == location.support, || "K1 marginal differs from the peak-location law".into())?;
    let second_total: BigUint = table.pair_marginal(false).values().map(|c| c.value().clone()).sum();
    ensure(&second_total == table.total().value(), || "K2 marginal does not sum to the total".into())?;

    let mut naive: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    common::for_each_permutation(9, |p| {
        let mut peaks = common::naive_peaks(&g, p);
        if peaks.len() == 2 {
            peaks.sort_unstable_by_key(|&v| std::cmp::Reverse(p[v]));
            *naive.entry((peaks[0], peaks[1])).or_insert(0) += 1;
        }
    });
    for (key, c) in &table.support {
        let OutcomeKey::Pair(a, b) = *key else {
            return Err(format!("non-pair key {key}"));
        };
        ensure(a != b && !g.is_adjacent(a, b), || format!("pair {a},{b} cannot both be peaks"))?;
        ensure(naive.get(&(a, b)).copied() == c.to_u64(), || format!("pair {a},{b}: {c} vs naive"))?;
    }
    ensure(naive.len() == table.support.len(), || "naive table has extra pairs".into())?;

    let mut by_dist: BTreeMap<usize, BigUint> = BTreeMap::new();
    for (key, c) in &table.support {
        if let OutcomeKey::Pair(a, b) = *key {
            *by_dist.entry(g.distance(a, b).unwrap()).or_default() += c.value();
        }
    }
    let total = table.total();
    let dist_law: Vec<String> = by_dist
        .iter()
        .map(|(d, c)| format!("{d}:{}", ExactProb::new(c.clone(), total.value().clone()).unwrap().to_decimal()))
        .collect();
    Ok(format!(
        "{} pairs, total {total}, P(N=2) = {}, dist law [{}], {table_time:.2?}",
        table.support.len(),
        counts.probability(2),
        dist_law.join(" ")
    ))
}

fn run_bin(args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_graph-peaks")).args(args).output().map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("{args:?} exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr))
    })
}

fn cli_reproducibility() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let file = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let (trace, labeling) = (file("trace.csv"), file("labeling.txt"));
    let runs: Vec<(Vec<String>, String)> = vec![
        (vec!["sample", "--graph", "torus:2,20", "--method", "eden", "--seed", "11", "--out", &trace], trace.clone()),
        (
            vec!["sample", "--graph", "grid:4,4", "--method", "mcmc", "--k", "2", "--count", "5", "--seed", "12", "--out", &labeling],
            labeling.clone(),
        ),
        (vec!["sample", "--graph", "path:7", "--method", "uniform", "--count", "4", "--seed", "13", "--out", &file("u.txt")], file("u.txt")),
        (vec!["sample", "--graph", "path:6", "--method", "rejection", "--k", "2", "--seed", "14", "--out", &file("r.txt")], file("r.txt")),
        (
            vec!["experiment", "twin-peaks", "--graph", "regular:2,2", "--trials", "6", "--steps", "20000", "--seed", "15", "--out", &file("twin.txt")],
            file("twin.txt"),
        ),
        (
            vec!["experiment", "boundary-roughness", "--n", "16", "--trials", "4", "--seed", "16", "--out", &file("rough.txt")],
            file("rough.txt"),
        ),
        (
            vec!["experiment", "gradient-line", "--m", "3", "--n", "16", "--trials", "4", "--seed", "17", "--out", &file("grad.txt")],
            file("grad.txt"),
        ),
        (
            vec!["experiment", "growth-comparison", "--n", "16", "--trials", "3", "--seed", "18", "--out", &file("growth.txt")],
            file("growth.txt"),
        ),
        (vec!["enumerate", "--graph", "barbell:2,5", "--table", "top2", "--out", &file("enum.csv")], file("enum.csv")),
        (vec!["render", "--trace", &trace, "--out", &file("heat.pgm")], file("heat.pgm")),
    ]
    .into_iter()
    .map(|(a, f)| (a.into_iter().map(String::from).collect(), f))
    .collect();

    let mut reference: Vec<Vec<u8>> = Vec::new();
    for (pass, threads) in ["1", "8", "8", "1"].into_iter().enumerate() {
        for (i, (args, out)) in runs.iter().enumerate() {
            let mut full: Vec<&str> = vec!["--threads", threads];
            full.extend(args.iter().map(String::as_str));
            run_bin(&full)?;
            let bytes = std::fs::read(Path::new(out)).map_err(|e| e.to_string())?;
            if pass == 0 {
                reference.push(bytes);
            } else {
                ensure(bytes == reference[i], || format!("{args:?} differs under --threads {threads}"))?;
            }
        }
    }
    Ok(format!("{} commands x 4 runs byte-identical (threads 1 and 8)", runs.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("exact formula matches enumeration", exact_single_peak_vs_oracle),
        ("three realizations on path4", three_realizations_on_path4),
        ("centroids maximize the single-peak probability", centroid_maximizers),
        ("regular tree sizes", regular_tree_formulas),
        ("twin-peak inequality chain", twin_peak_chain),
        ("sharpened ratio bounds", sharpened_ratios),
        ("MCMC matches the oracle in TV", mcmc_validity),
        ("structural invariants under sampling", structural_invariants),
        ("Eden growth", eden_model),
        ("barbell two-peak table", barbell_oracle),
        ("CLI reproducibility", cli_reproducibility),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
