//! The two examples showing the converse bound cannot be improved much:
//! an outer-product matrix with ratio at most 4 but top eigenvalue H_n, and
//! a layered graph family whose centred spectrum stays large.

use twolift::builder::{outer_product_matrix, tightness_family, tightness_measure};
use twolift::discrepancy::matrix_ratio_sampled;
use twolift::spectral::{eigenvalues_sym, DEFAULT_TOL};

fn main() -> twolift::Result<()> {
    for n in [16, 64, 256] {
        let m = outer_product_matrix(n)?;
        let top = eigenvalues_sym(&m, DEFAULT_TOL)?.max();
        let ratio = matrix_ratio_sampled(&m, 2000, 1, false)?.score;
        println!("outer product n={n:>3}: top eigenvalue {top:.6}, sampled ratio {ratio:.4}");
    }

    let (g, family) = tightness_family(12, 1, 32, 0)?;
    let report = tightness_measure(&g, &family, 500, 0, DEFAULT_TOL)?;
    println!("layered family: n = {}, degrees {:?}", g.n(), family.degrees);
    println!("  centred λ {:.4}, Rayleigh quotient {:.4}, Δ(t+1) = {}", report.lambda_centered, report.rayleigh, report.lambda_target);
    println!("  sampled disjoint ratio {:.4}", report.alpha_sampled);
    Ok(())
}
