use serde::Serialize;

use super::size_limit;
use crate::error::{invalid, Result};
use crate::graph::{connected_subsets, Graph};

/// Default cap on the number of connected subsets examined.
pub const DEFAULT_SUBSET_CAP: usize = 20_000_000;

const MAX_SUPPORT: usize = 24;
const TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SparseViolation {
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    /// `uᵀAv`.
    pub value: usize,
    /// `β·√(|u||v|)`.
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SparseReport {
    pub sparse: bool,
    pub violation: Option<SparseViolation>,
    pub subsets_checked: usize,
}

/// Tests whether `uᵀAv ≤ β·‖u‖·‖v‖` for all 0/1 vectors `u, v` whose
/// supports together have at most `t` vertices.
///
/// Only connected unions are enumerated: if the union splits into
/// components, the form splits into a sum and Cauchy–Schwarz bounds it by
/// the worst component.
pub fn sparse_check(graph: &Graph, beta: f64, t: usize) -> Result<SparseReport> {
    sparse_check_capped(graph, beta, t, DEFAULT_SUBSET_CAP)
}

pub fn sparse_check_capped(graph: &Graph, beta: f64, t: usize, cap: usize) -> Result<SparseReport> {
    if !(beta >= 0.0) {
        return Err(invalid(format!("beta must be non-negative, got {beta}")));
    }
    if t > MAX_SUPPORT {
        return Err(invalid(format!("t must be at most {MAX_SUPPORT}, got {t}")));
    }
    let mut checked = 0;
    let mut local = Vec::with_capacity(t);
    for w in connected_subsets(graph, t) {
        checked += 1;
        if checked > cap {
            return Err(size_limit(format!("more than {cap} connected subsets of size <= {t}")));
        }
        local.clear();
        local.extend(w.iter().map(|&x| {
            w.iter().enumerate().filter(|&(_, &y)| graph.has_edge(x, y)).fold(0u32, |m, (j, _)| m | 1 << j)
        }));
        if let Some((um, vm, value)) = local_violation(&local, beta) {
            let pick = |m: u32| (0..w.len()).filter(|&j| m >> j & 1 == 1).map(|j| w[j]).collect::<Vec<_>>();
            let (u, v) = (pick(um), pick(vm));
            let bound = beta * ((u.len() * v.len()) as f64).sqrt();
            return Ok(SparseReport {
                sparse: false,
                violation: Some(SparseViolation { u, v, value, bound }),
                subsets_checked: checked,
            });
        }
    }
    Ok(SparseReport { sparse: true, violation: None, subsets_checked: checked })
}

/// First `(U, V, uᵀAv)` inside a small vertex set with `uᵀAv > β√(|U||V|)`.
///
/// `adj[i]` is the neighbour mask of local vertex `i`. For each `U` the best
/// `V` of each size takes the vertices with the most neighbours in `U`.
pub(crate) fn local_violation(adj: &[u32], beta: f64) -> Option<(u32, u32, usize)> {
    let k = adj.len();
    let mut deg: Vec<(u32, usize)> = Vec::with_capacity(k);
    for u in 1u32..(1u32 << k) {
        let us = u.count_ones() as f64;
        deg.clear();
        deg.extend(adj.iter().enumerate().map(|(j, &m)| ((m & u).count_ones(), j)));
        deg.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut sum = 0usize;
        for (x, &(c, _)) in deg.iter().enumerate() {
            if c == 0 {
                break;
            }
            sum += c as usize;
            if sum as f64 > beta * (us * (x + 1) as f64).sqrt() + TOL {
                let v = deg[..=x].iter().fold(0u32, |m, &(_, j)| m | 1 << j);
                return Some((u, v, sum));
            }
        }
    }
    None
}
