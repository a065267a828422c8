// The command-line front end driven in-process.

use graph_peaks::cli::run_cli;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for args in [
        &["graph-peaks", "exact-tree", "--graph", "path:4", "--op", "single-peak"][..],
        &["graph-peaks", "enumerate", "--graph", "star:5"][..],
        &["graph-peaks", "sample", "--graph", "path:6", "--method", "sequential", "--seed", "9"][..],
    ] {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_cli(args.iter().copied(), &mut out, &mut err);
        if code != 0 {
            return Err(String::from_utf8_lossy(&err).into_owned().into());
        }
        print!("{}", String::from_utf8(out)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
