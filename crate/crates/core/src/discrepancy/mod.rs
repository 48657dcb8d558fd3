//! Discrepancy of graphs and symmetric matrices.
//!
//! For a `d`-regular graph on `n` vertices the deviation of a pair of vertex
//! sets is `|e(S, T) − d|S||T|/n|`, with `e(S, T)` counted over ordered
//! pairs (see [`crate::graph`]). The graph is `(d, α)`-jumbled when every
//! deviation is at most `α·√(|S||T|)`.
//!
//! The mixing lemma says `α ≤ λ(G)`. In the other direction,
//! `λ ≤ C·α·(log(d/α) + 1)` with `C` = [`CONVERSE_CONSTANT`], and
//! [`discrepancy_witness`] turns a large eigenvalue into an explicit pair of
//! disjoint sets with large discrepancy.

mod bounds;
mod dyadic;
mod jumbled;
mod sparse;
mod witness;

pub use bounds::{alpha_star, alpha_star_with, converse_bound, converse_bound_with, CONVERSE_CONSTANT};
pub use dyadic::{dyadic_round, DyadicVector, Rounding};
pub use jumbled::{
    jumbledness_alpha_exact, jumbledness_alpha_sampled, matrix_ratio_sampled, mixing_forward_check, MixingCheck,
    PairScore, EXACT_MAX_VERTICES,
};
pub use sparse::{sparse_check, sparse_check_capped, SparseReport, SparseViolation, DEFAULT_SUBSET_CAP};
pub use witness::discrepancy_witness;
pub(crate) use sparse::local_violation;
pub(crate) use witness::best_witness;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::spectral::SymMatrix;

/// Two disjoint nonempty vertex sets and the discrepancy of `M` on them.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscrepancyWitness {
    /// Sorted support of `u`.
    pub u: Vec<usize>,
    /// Sorted support of `v`.
    pub v: Vec<usize>,
    /// `|uᵀMv|`.
    pub value: f64,
    /// `value / √(|u||v|)`.
    pub ratio: f64,
}

impl DiscrepancyWitness {
    /// Evaluates `M` on the pair, rejecting empty or overlapping supports.
    pub fn evaluate(matrix: &SymMatrix, mut u: Vec<usize>, mut v: Vec<usize>) -> Result<Self> {
        u.sort_unstable();
        v.sort_unstable();
        u.dedup();
        v.dedup();
        if u.is_empty() || v.is_empty() {
            return Err(invalid("witness supports must be nonempty"));
        }
        if u.iter().chain(&v).any(|&i| i >= matrix.dim()) {
            return Err(invalid("witness index outside the matrix"));
        }
        if u.iter().any(|x| v.binary_search(x).is_ok()) {
            return Err(invalid("witness supports must be disjoint"));
        }
        let value = matrix.indicator_form(&u, &v).abs();
        let ratio = value / ((u.len() * v.len()) as f64).sqrt();
        Ok(DiscrepancyWitness { u, v, value, ratio })
    }
}

/// `B = A − (d/n)·J` for a `d`-regular graph.
pub fn centered_form(graph: &Graph) -> Result<SymMatrix> {
    let d = regular_degree(graph)?;
    let n = graph.n();
    let shift = d as f64 / n as f64;
    Ok(crate::spectral::adjacency(graph).shifted_by_ones(-shift))
}

pub(crate) fn regular_degree(graph: &Graph) -> Result<usize> {
    if graph.n() == 0 {
        return Err(invalid("graph has no vertices"));
    }
    graph.regular_degree().ok_or_else(|| invalid("graph is not regular"))
}

pub(crate) fn size_limit(msg: String) -> Error {
    Error::SizeLimit(msg)
}

#[cfg(test)]
mod tests;
