//! Pick a signing by conditional expectations and compare it with the
//! average over all signings.

use twolift::graph::petersen;
use twolift::signing::{derandomize_conditional, is_good_signing, SearchParams};

fn main() -> twolift::Result<()> {
    let g = petersen();
    let params = SearchParams::for_graph(&g)?;
    let out = derandomize_conditional(&g, &params)?;
    println!("walk length l = {}, sparsity threshold γ = {:.3}", params.l, params.gamma);
    println!("E[X] = {:.1}, chosen X = {:.1}", out.initial_expectation, out.final_value);
    let report = is_good_signing(&g, &out.signing, &params)?;
    println!("signs: {:?}", out.signing.as_slice());
    println!("radius {:.4} (threshold {:.2}), sparse lift: {}", report.radius, report.radius_threshold, report.sparse_ok);
    Ok(())
}
