//! Lift a random cubic graph and watch its spectrum split into the base
//! eigenvalues and the signed ones.

use twolift::graph::{covering_check, random_regular, two_lift};
use twolift::signing::random_signing;
use twolift::spectral::{lift_spectrum_decompose, DEFAULT_TOL};

fn main() -> twolift::Result<()> {
    let g = random_regular(10, 3, 5)?;
    let s = random_signing(&g, 11);
    let (lift, proj) = two_lift(&g, &s)?;
    println!("base n={}, lift n={}, covering map ok: {}", g.n(), lift.n(), covering_check(&lift, &g, &proj)?);

    let split = lift_spectrum_decompose(&g, &s, DEFAULT_TOL)?;
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:+.4}")).collect::<Vec<_>>().join(" ");
    println!("old:    {}", fmt(&split.old));
    println!("new:    {}", fmt(&split.new));
    println!("lifted: {}", fmt(&split.lifted.eigenvalues));
    println!("largest mismatch {:.2e}", split.mismatch);
    Ok(())
}
