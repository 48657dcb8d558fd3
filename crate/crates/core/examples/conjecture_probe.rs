//! Every connected cubic graph on up to 10 vertices has a signing with
//! radius at most 2√2.

use twolift::graph::connected_cubic_graphs;
use twolift::signing::exhaustive_best_signing;

fn main() -> twolift::Result<()> {
    let bound = 2.0 * 2f64.sqrt();
    for n in [4, 6, 8, 10] {
        let graphs = connected_cubic_graphs(n)?;
        let mut worst = 0.0f64;
        for g in &graphs {
            worst = worst.max(exhaustive_best_signing(g)?.1);
        }
        println!("n={n:>2}: {:>2} graphs, worst optimal radius {worst:.4} (bound {bound:.4})", graphs.len());
    }
    Ok(())
}
