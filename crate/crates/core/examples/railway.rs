//! The railway family: a cubic graph whose best-looking signing still has
//! radius √5, above the 2√2 Ramanujan bound.
//!
//! ```text
//! cargo run --example railway -- 16
//! ```

use twolift::graph::make_railway;
use twolift::spectral::{eigenvalues_sym, signed_adjacency, DEFAULT_TOL};

fn main() -> twolift::Result<()> {
    let k: usize = std::env::args().nth(1).map_or(8, |a| a.parse().expect("k must be an integer"));
    let (g, s) = make_railway(k)?;
    let report = eigenvalues_sym(&signed_adjacency(&g, &s)?, DEFAULT_TOL)?;
    println!("railway k={k}: {} vertices, {} negative edges", g.n(), s.negative_count());
    println!("signed radius {:.12}  (√5 = {:.12})", report.radius, 5f64.sqrt());
    println!("2√2 = {:.12}", 2.0 * 2f64.sqrt());
    Ok(())
}
