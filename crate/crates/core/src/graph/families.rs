use super::{Graph, Signing};
use crate::error::{invalid, Result};

/// The complete graph `K_k`.
pub fn make_complete(k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(invalid(format!("complete graph needs k >= 2, got {k}")));
    }
    let edges = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect();
    Graph::new(k, edges)
}

/// The cycle `C_k` with edges `(i, i+1 mod k)`.
pub fn cycle(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(invalid(format!("cycle needs k >= 3, got {k}")));
    }
    Graph::new(k, (0..k).map(|i| (i, (i + 1) % k)).collect())
}

/// The Petersen graph: outer 5-cycle, spokes, inner pentagram.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
    }
    for i in 0..5 {
        edges.push((i, i + 5));
    }
    for i in 0..5 {
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::new(10, edges).expect("petersen edges are valid")
}

/// The railway graph on `4k` vertices with its canonical signing.
///
/// Vertex `(i, j)` with `i ∈ 0..2k`, `j ∈ {0, 1}` is labelled `j·2k + i`.
/// Edges are the two rails `(i, j)–(i+1, j)` followed by the rungs
/// `(i, 0)–(i, 1)`. The signing is `-1` exactly on the rungs with even `i`.
pub fn make_railway(k: usize) -> Result<(Graph, Signing)> {
    if k < 2 {
        return Err(invalid(format!("railway graph needs k >= 2, got {k}")));
    }
    let len = 2 * k;
    let label = |i: usize, j: usize| j * len + i;
    let mut edges = Vec::with_capacity(3 * len);
    let mut signs = Vec::with_capacity(3 * len);
    for j in 0..2 {
        for i in 0..len {
            edges.push((label(i, j), label((i + 1) % len, j)));
            signs.push(1);
        }
    }
    for i in 0..len {
        edges.push((label(i, 0), label(i, 1)));
        signs.push(if i % 2 == 0 { -1 } else { 1 });
    }
    Ok((Graph::new(2 * len, edges)?, Signing::new(signs)?))
}

/// `copies` vertex-disjoint copies of `K_{d+1}`.
pub fn disjoint_cliques(copies: usize, d: usize) -> Result<Graph> {
    if copies == 0 || d == 0 {
        return Err(invalid("disjoint cliques need copies >= 1 and d >= 1"));
    }
    let k = d + 1;
    let mut edges = Vec::with_capacity(copies * k * d / 2);
    for c in 0..copies {
        let base = c * k;
        for u in 0..k {
            for v in u + 1..k {
                edges.push((base + u, base + v));
            }
        }
    }
    Graph::new(copies * k, edges)
}
