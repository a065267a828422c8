// Exact single-peak probabilities on trees and their maximizers.

use graph_peaks::graph::{make_barbell_tree, make_path};
use graph_peaks::tree::centroids;
use graph_peaks::tree_exact::{adjacent_ratio, argmax_single_peak, single_peak_prob_at};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let path = make_path(4)?;
    for x in path.vertices() {
        let p = single_peak_prob_at(&path, x)?;
        println!("path4 vertex {x}: {p} = {}", p.to_decimal());
    }
    println!("ratio P(K=1)/P(K=0) = {}", adjacent_ratio(&path, 1, 0)?);

    let barbell = make_barbell_tree(2, 5)?;
    let best = argmax_single_peak(&barbell)?;
    assert_eq!(best, centroids(&barbell)?);
    println!("barbell(2,5) most likely peak location(s): {best:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
