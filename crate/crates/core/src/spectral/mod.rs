//! Symmetric eigensolving and signed spectra.
//!
//! The dense solver is nalgebra's symmetric QR iteration. Every reported
//! eigenpair is checked against `‖Mv − λv‖ ≤ tol·‖M‖_F` before it is
//! returned.

mod matrix;

pub use matrix::{adjacency, signed_adjacency, SymMatrix};

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::graph::{two_lift, Graph, Signing};

/// Default eigen-residual tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Largest ℓ∞ gap accepted between a lift spectrum and old ⊎ new, per unit
/// of spectral scale.
pub const MULTISET_TOL: f64 = 1e-7;

/// Sorted spectrum of a symmetric matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralReport {
    /// Descending.
    pub eigenvalues: Vec<f64>,
    pub tol: f64,
    /// `max |λ_i|`.
    pub radius: f64,
    /// `max_{i ≥ 2} |λ_i|`, the graph parameter `λ(G)` for adjacency matrices.
    pub lambda2: f64,
}

impl SpectralReport {
    fn from_sorted(eigenvalues: Vec<f64>, tol: f64) -> Self {
        let radius = eigenvalues.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        let lambda2 = eigenvalues.iter().skip(1).fold(0.0f64, |a, x| a.max(x.abs()));
        SpectralReport { eigenvalues, tol, radius, lambda2 }
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }
}

/// Eigenvalues with unit eigenvectors; `vectors[i]` belongs to `report.eigenvalues[i]`.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub report: SpectralReport,
    pub vectors: Vec<Vec<f64>>,
}

impl EigenDecomposition {
    /// Index of an eigenvalue of largest magnitude (ties go to the larger value).
    pub fn extremal_index(&self) -> usize {
        let ev = &self.report.eigenvalues;
        match (ev.first(), ev.last()) {
            (Some(&hi), Some(&lo)) if lo.abs() > hi.abs() => ev.len() - 1,
            _ => 0,
        }
    }
}

const MAX_SWEEPS_PER_DIM: usize = 1000;

/// Full eigendecomposition with residual certification.
pub fn eigen_decompose(matrix: &SymMatrix, tol: f64) -> Result<EigenDecomposition> {
    if !(tol > 0.0) {
        return Err(invalid(format!("tolerance must be positive, got {tol}")));
    }
    let n = matrix.dim();
    if n == 0 {
        return Ok(EigenDecomposition { report: SpectralReport::from_sorted(Vec::new(), tol), vectors: Vec::new() });
    }
    let eig = matrix
        .to_nalgebra()
        .try_symmetric_eigen(f64::EPSILON, MAX_SWEEPS_PER_DIM * n)
        .ok_or(Error::SolverFailure { residual: f64::INFINITY })?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]).then(a.cmp(&b)));

    let norm = matrix.frobenius_sq().sqrt();
    let mut values = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n);
    let mut worst = 0.0f64;
    for &k in &order {
        let lambda = eig.eigenvalues[k];
        let v: Vec<f64> = eig.eigenvectors.column(k).iter().copied().collect();
        let mv = matrix.matvec(&v);
        let residual = mv.iter().zip(&v).map(|(a, b)| (a - lambda * b).powi(2)).sum::<f64>().sqrt();
        worst = worst.max(residual);
        values.push(lambda);
        vectors.push(v);
    }
    if worst > tol * norm.max(f64::MIN_POSITIVE) {
        return Err(Error::SolverFailure { residual: worst });
    }
    Ok(EigenDecomposition { report: SpectralReport::from_sorted(values, tol), vectors })
}

/// Full sorted spectrum of a symmetric matrix.
pub fn eigenvalues_sym(matrix: &SymMatrix, tol: f64) -> Result<SpectralReport> {
    Ok(eigen_decompose(matrix, tol)?.report)
}

/// Spectral radius only, without residual certification. Used inside
/// search loops where each candidate is re-verified afterwards.
pub fn spectral_radius(matrix: &SymMatrix) -> f64 {
    if matrix.dim() == 0 {
        return 0.0;
    }
    matrix.to_nalgebra().symmetric_eigenvalues().iter().fold(0.0f64, |a, x| a.max(x.abs()))
}

/// Spectral radius of the signed adjacency matrix of `(graph, signing)`.
pub fn signing_radius(graph: &Graph, signing: &Signing) -> Result<f64> {
    Ok(spectral_radius(&signed_adjacency(graph, signing)?))
}

/// The two halves of a lift spectrum.
#[derive(Clone, Debug)]
pub struct LiftSpectrum {
    /// Spectrum of the base adjacency matrix, descending.
    pub old: Vec<f64>,
    /// Spectrum of the signed adjacency matrix, descending.
    pub new: Vec<f64>,
    /// Spectrum of the materialised lift.
    pub lifted: SpectralReport,
    /// ℓ∞ distance between `lifted` and the sorted union of `old` and `new`.
    pub mismatch: f64,
}

/// Splits the spectrum of the 2-lift into old (base) and new (signed)
/// eigenvalues and checks that together they reproduce the lift spectrum.
pub fn lift_spectrum_decompose(graph: &Graph, signing: &Signing, tol: f64) -> Result<LiftSpectrum> {
    let old = eigenvalues_sym(&adjacency(graph), tol)?.eigenvalues;
    let new = eigenvalues_sym(&signed_adjacency(graph, signing)?, tol)?.eigenvalues;
    let (lifted_graph, _) = two_lift(graph, signing)?;
    let lifted = eigenvalues_sym(&adjacency(&lifted_graph), tol)?;
    let union = merge_descending(&old, &new);
    let mismatch = sorted_linf(&union, &lifted.eigenvalues);
    let scale = graph.max_degree().max(1) as f64;
    if mismatch > MULTISET_TOL * scale {
        return Err(Error::InternalConsistency(format!(
            "lift spectrum differs from old ⊎ new by {mismatch:e}"
        )));
    }
    Ok(LiftSpectrum { old, new, lifted, mismatch })
}

/// Sorted (descending) union of two descending lists.
pub fn merge_descending(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = a.iter().chain(b).copied().collect();
    out.sort_by(|x, y| y.total_cmp(x));
    out
}

/// ℓ∞ distance between two equally long sorted lists (∞ if lengths differ).
pub fn sorted_linf(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
}

/// `trace(A_s^l)`: the sum over closed walks of length `l` of the product
/// of the edge signs along the walk. Computed exactly as
/// `Σ_v ‖A_s^{l/2} e_v‖²` with integer arithmetic.
pub fn trace_power_walks(graph: &Graph, signing: &Signing, l: usize) -> Result<f64> {
    signing.check_aligned(graph)?;
    if l < 2 || l % 2 != 0 {
        return Err(invalid(format!("walk length must be even and >= 2, got {l}")));
    }
    let n = graph.n();
    let half = l / 2;
    let mut total: i128 = 0;
    let mut cur = vec![0i128; n];
    let mut next = vec![0i128; n];
    for start in 0..n {
        cur.iter_mut().for_each(|x| *x = 0);
        cur[start] = 1;
        for _ in 0..half {
            next.iter_mut().for_each(|x| *x = 0);
            for (v, &cv) in cur.iter().enumerate() {
                if cv == 0 {
                    continue;
                }
                for &(w, e) in graph.incident(v) {
                    next[w] += cv * i128::from(signing.get(e));
                }
            }
            std::mem::swap(&mut cur, &mut next);
        }
        total += cur.iter().map(|x| x * x).sum::<i128>();
    }
    Ok(total as f64)
}

#[cfg(test)]
mod tests;
