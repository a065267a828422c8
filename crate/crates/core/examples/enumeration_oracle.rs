// Brute-force tables over all labelings of small graphs.

use graph_peaks::graph::make_path;
use graph_peaks::oracle::{
    conditional_statistic, conditional_top_locations, enumerate_peak_counts, growth_vs_uniform_discrepancy, OutcomeKey,
    Statistic,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = make_path(5)?;
    let table = enumerate_peak_counts(&g)?;
    for (k, c) in &table.counts {
        println!("{k} peak(s): {c} of {}", table.total);
    }
    let top = conditional_top_locations(&g, 1)?;
    for (key, p) in top.probabilities() {
        println!("single peak at {key}: {p}");
    }
    let d = conditional_statistic(&g, 2, &Statistic::DistK1K2)?;
    for (key, c) in &d.support {
        println!("two peaks at distance {key}: {c}");
    }

    // uniform conditioning versus sequential growth from vertex 1
    let gd = growth_vs_uniform_discrepancy(&make_path(4)?, 1)?;
    let a = OutcomeKey::Vertex(0);
    println!(
        "label 3 at vertex 0: uniform {} vs growth {}",
        gd.uniform.probability(&a),
        gd.sequential[&0]
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
