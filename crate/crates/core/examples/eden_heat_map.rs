// Eden growth on a torus, written as a trace CSV and a PGM heat map.

use graph_peaks::graph::make_torus;
use graph_peaks::io::{parse_pgm, read_trace_csv, render_trace_pgm, write_trace_csv};
use graph_peaks::rng::RngStream;
use graph_peaks::samplers::eden_growth;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let g = make_torus(2, 40)?;
    let start = 20 * 40 + 20;
    let trace = eden_growth(&g, start, g.n_vertices() - 1, &mut RngStream::new(1, 0))?;
    println!("largest boundary {} at n = {}", trace.max_boundary(), g.n_vertices());

    let dir = std::env::temp_dir().join(format!("graph-peaks-eden-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let csv = dir.join("eden.csv");
    write_trace_csv(&trace, &csv)?;
    assert_eq!(read_trace_csv(&csv)?, trace);

    let pgm = render_trace_pgm(&g, &trace, "eden growth on torus(2,40)")?;
    let img = parse_pgm(&pgm)?;
    println!("heat map {}x{} written next to {}", img.width, img.height, csv.display());
    std::fs::write(dir.join("eden.pgm"), pgm)?;
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
