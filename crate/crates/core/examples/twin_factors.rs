// Five-factor products for twin peaks on regular trees.

use graph_peaks::tree_exact::{sharpened_ratio_bound_check, twin_factor_products, twin_vertices};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for d in 3..=5 {
        for k in 2..=4 {
            let t = twin_factor_products(d, k)?;
            println!(
                "d={d} k={k}: holds={} polynomial={} log10 lhs={:.3} rhs={:.3}",
                t.inequality_holds,
                t.polynomial_value,
                t.lhs.log10(),
                t.rhs.log10()
            );
        }
    }
    let t = twin_factor_products(2, 2)?;
    let (root, y1, y2, y3) = twin_vertices(2);
    println!("d=2 k=2 root {root}, y1 {y1}, y2 {y2}, y3 {y3}: lhs = {:?}", t.lhs.exact(4096).map(|p| p.to_string()));
    println!("sharpened ratios d=3 k=3: {}", sharpened_ratio_bound_check(3, 3)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
