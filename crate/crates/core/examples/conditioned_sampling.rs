// Rejection and MCMC samplers conditioned on the number of peaks.

use std::collections::BTreeMap;

use graph_peaks::graph::make_path;
use graph_peaks::labeling::peaks;
use graph_peaks::mcmc::{mcmc_conditioned, McmcConfig};
use graph_peaks::rng::RngStream;
use graph_peaks::samplers::{canonical_single_peak, rejection_conditioned};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = make_path(5)?;
    let mut rng = RngStream::new(2024, 0);

    let mut rejection = BTreeMap::new();
    for _ in 0..2000 {
        let l = rejection_conditioned(&g, 1, &mut rng, 10_000)?;
        *rejection.entry(peaks(&g, &l)?.peaks[0]).or_insert(0) += 1;
    }

    let init = canonical_single_peak(&g, 2)?;
    let cfg = McmcConfig::for_samples(g.n_vertices(), 2000);
    let mut chain = BTreeMap::new();
    for l in mcmc_conditioned(&g, 1, &init, &cfg, &mut rng.substream(1))? {
        *chain.entry(peaks(&g, &l)?.peaks[0]).or_insert(0) += 1;
    }
    println!("peak location counts, rejection: {rejection:?}");
    println!("peak location counts, mcmc:      {chain:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
