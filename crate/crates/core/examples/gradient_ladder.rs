// Decreasing paths across a ladder for labelings peaked at the corner.

use graph_peaks::graph::make_grid;
use graph_peaks::gradient::gradient_path;
use graph_peaks::mcmc::{mcmc_pinned_peak, McmcConfig};
use graph_peaks::rng::RngStream;
use graph_peaks::samplers::canonical_single_peak;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = make_grid(3, 30)?;
    let init = canonical_single_peak(&g, 0)?;
    let cfg = McmcConfig::for_samples(g.n_vertices(), 10);
    for l in mcmc_pinned_peak(&g, 0, &init, &cfg, &mut RngStream::new(5, 0))? {
        let p = gradient_path(&g, &l)?;
        let coords = g.coords().expect("grid coordinates");
        let end = coords.of(*p.path.last().unwrap());
        println!("path of {} vertices ending at ({}, {})", p.len(), end[0] + 1, end[1] + 1);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
