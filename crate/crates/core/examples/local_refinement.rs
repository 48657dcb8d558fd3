//! Improve a random signing by re-randomising the edges picked out by
//! discrepancy witnesses, aiming below the default 2√2.

use twolift::graph::random_regular;
use twolift::signing::{local_refinement, SearchParams};

fn main() -> twolift::Result<()> {
    let g = random_regular(20, 3, 2)?;
    let mut params = SearchParams::for_graph(&g)?;
    params.budget = 200;
    params.seed = 4;
    params.target_radius = 2.6;
    let r = local_refinement(&g, &params)?;
    println!("target radius {:.4}", params.target_radius);
    println!("radius {:.4} -> {:.4} after {} steps (converged: {})", r.trace[0], r.radius, r.iterations, r.converged);
    Ok(())
}
