use super::{Graph, Signing};
use crate::error::{invalid, Result};

/// The 2:1 covering map from a lift back to its base graph.
///
/// Lifted vertex `v` lies over base vertex `v mod parent_n`; its fiber
/// index is `v / parent_n`. Base vertex `x` therefore lifts to `x` and
/// `x + parent_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiftProjection {
    pub parent_n: usize,
}

impl LiftProjection {
    pub fn project(&self, v: usize) -> usize {
        v % self.parent_n
    }

    pub fn fiber(&self, v: usize) -> usize {
        v / self.parent_n
    }

    pub fn lift(&self, x: usize, fiber: usize) -> usize {
        debug_assert!(fiber < 2);
        x + fiber * self.parent_n
    }
}

/// The 2-lift of `graph` determined by `signing`.
///
/// Base edge `e = (x, y)` yields lifted edges `e` and `e + m`: for a `+1`
/// sign these are `(x₀, y₀)` and `(x₁, y₁)`, for `-1` they are `(x₀, y₁)`
/// and `(x₁, y₀)`.
pub fn two_lift(graph: &Graph, signing: &Signing) -> Result<(Graph, LiftProjection)> {
    signing.check_aligned(graph)?;
    let n = graph.n();
    let m = graph.m();
    let mut edges = vec![(0, 0); 2 * m];
    for (e, &(x, y)) in graph.edges().iter().enumerate() {
        if signing.get(e) > 0 {
            edges[e] = (x, y);
            edges[e + m] = (x + n, y + n);
        } else {
            edges[e] = (x, y + n);
            edges[e + m] = (x + n, y);
        }
    }
    Ok((Graph::new(2 * n, edges)?, LiftProjection { parent_n: n }))
}

/// True iff every lifted vertex has exactly one neighbor in the fiber of
/// each base neighbor of its projection, and nothing else.
pub fn covering_check(lifted: &Graph, base: &Graph, proj: &LiftProjection) -> Result<bool> {
    if proj.parent_n != base.n() || lifted.n() != 2 * base.n() {
        return Err(invalid(format!(
            "lift has {} vertices but base has {} (projection parent {})",
            lifted.n(),
            base.n(),
            proj.parent_n
        )));
    }
    let mut hits = vec![0usize; base.n()];
    for v in 0..lifted.n() {
        let x = proj.project(v);
        if lifted.degree(v) != base.degree(x) {
            return Ok(false);
        }
        for w in lifted.neighbors(v) {
            hits[proj.project(w)] += 1;
        }
        let ok = base.neighbors(x).all(|y| hits[y] == 1);
        for w in lifted.neighbors(v) {
            hits[proj.project(w)] = 0;
        }
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}
