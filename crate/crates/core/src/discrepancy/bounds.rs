use crate::error::{invalid, Result};

/// Constant in `λ ≤ C·α·(log₂(d/α) + 1)`.
pub const CONVERSE_CONSTANT: f64 = 16.0;

const BISECTION_TOL: f64 = 1e-12;

/// `16·α·(log₂(d/α) + 1)`: an upper bound on `λ` for a matrix whose
/// disjoint-pair discrepancy ratio is at most `α` and whose rows have
/// ℓ₁ norm at most `d`.
pub fn converse_bound(alpha: f64, d: f64) -> Result<f64> {
    converse_bound_with(CONVERSE_CONSTANT, alpha, d)
}

pub fn converse_bound_with(constant: f64, alpha: f64, d: f64) -> Result<f64> {
    if !(constant > 0.0) {
        return Err(invalid(format!("constant must be positive, got {constant}")));
    }
    if !(alpha > 0.0) || !(alpha <= d) {
        return Err(invalid(format!("need 0 < alpha <= d, got alpha = {alpha}, d = {d}")));
    }
    Ok(constant * alpha * ((d / alpha).log2() + 1.0))
}

/// Where `α ↦ α·(log₂(d/α) + 1)` peaks; the bound increases on `(0, peak]`.
fn increasing_end(d: f64) -> f64 {
    d * 2f64.powf(1.0 - std::f64::consts::LOG2_E)
}

/// The `α` on the increasing branch with `converse_bound(α, d) = ρ`.
///
/// A matrix with spectral radius `ρ` must have a disjoint pair with ratio
/// at least this value. Returns 0 for `ρ ≤ 0`.
pub fn alpha_star(rho: f64, d: f64) -> Result<f64> {
    alpha_star_with(CONVERSE_CONSTANT, rho, d)
}

pub fn alpha_star_with(constant: f64, rho: f64, d: f64) -> Result<f64> {
    if !(d > 0.0) {
        return Err(invalid(format!("d must be positive, got {d}")));
    }
    if rho <= 0.0 {
        return Ok(0.0);
    }
    let mut hi = increasing_end(d);
    if converse_bound_with(constant, hi, d)? < rho {
        return Err(invalid(format!("rho = {rho} exceeds the largest value of the bound for d = {d}")));
    }
    let mut lo = 0.0;
    while hi - lo > BISECTION_TOL * d {
        let mid = 0.5 * (lo + hi);
        if converse_bound_with(constant, mid, d)? < rho {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}
