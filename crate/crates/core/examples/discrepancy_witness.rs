//! Extract a pair of disjoint vertex sets on which a matrix with a large
//! eigenvalue has large discrepancy.

use twolift::discrepancy::{alpha_star, centered_form, discrepancy_witness};
use twolift::graph::{disjoint_cliques, random_regular};
use twolift::spectral::spectral_radius;

fn main() -> twolift::Result<()> {
    let graphs = [("random 4-regular", random_regular(16, 4, 9)?), ("two copies of K5", disjoint_cliques(2, 4)?)];
    for (name, g) in graphs {
        let m = centered_form(&g)?.without_diagonal();
        let d = m.max_row_l1();
        let rho = spectral_radius(&m);
        let w = discrepancy_witness(&m, d, None)?;
        println!("{name}: ρ = {rho:.4}, guaranteed ratio {:.4}", alpha_star(rho, d)?);
        println!("  u = {:?}", w.u);
        println!("  v = {:?}", w.v);
        println!("  |uᵀMv| = {:.4}, ratio {:.4}", w.value, w.ratio);
    }
    Ok(())
}
