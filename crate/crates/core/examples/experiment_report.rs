// An experiment report, its file layout and summary recomputation.

use graph_peaks::experiments::{recompute_summary, twin_peaks_tree, ExperimentReport, TwinMode};
use graph_peaks::graph::make_regular_tree;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let tree = make_regular_tree(2, 1)?;
    let exact = twin_peaks_tree(&tree, 0, None, 0, TwinMode::Oracle)?;
    let sampled = twin_peaks_tree(&tree, 40, None, 3, TwinMode::Mcmc)?;
    for r in [&exact, &sampled] {
        let text = r.to_text();
        let back = ExperimentReport::parse(&text)?;
        assert_eq!(recompute_summary(&back)?, r.summary);
        let p = r.summary_value("p_k1_root").expect("summary entry");
        println!("{}: P(K1 = root) = {} (+- {:?})", r.parameter("mode").unwrap(), p.value, p.half_width);
    }
    print!("{}", exact.to_text());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
