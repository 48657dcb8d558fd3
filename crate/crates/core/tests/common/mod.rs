//! Reference implementations used as oracles by the integration tests.

#![allow(dead_code)]

use twolift::graph::{Graph, Signing};

/// Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations,
/// sorted descending.
pub fn jacobi_eigenvalues(rows: &[Vec<f64>]) -> Vec<f64> {
    let n = rows.len();
    let mut a: Vec<Vec<f64>> = rows.to_vec();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        let scale: f64 = a.iter().flatten().map(|x| x * x).sum::<f64>().max(1e-300);
        if off <= 1e-30 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(|x, y| y.total_cmp(x));
    ev
}

pub fn dense(g: &Graph, s: Option<&Signing>) -> Vec<Vec<f64>> {
    let mut m = vec![vec![0.0; g.n()]; g.n()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let w = s.map_or(1.0, |s| f64::from(s.get(e)));
        m[u][v] = w;
        m[v][u] = w;
    }
    m
}

/// The 2-lift built straight from its definition: `(x, a)` and `(y, b)`
/// are adjacent iff `xy` is an edge and `a = b` exactly when its sign is
/// `+1`. Vertex `(x, a)` is numbered `x + a·n`.
pub fn lift_by_definition(g: &Graph, s: &Signing) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut m = vec![vec![0.0; 2 * n]; 2 * n];
    for (e, &(x, y)) in g.edges().iter().enumerate() {
        for a in 0..2 {
            for b in 0..2 {
                if (a == b) == (s.get(e) > 0) {
                    m[x + a * n][y + b * n] = 1.0;
                    m[y + b * n][x + a * n] = 1.0;
                }
            }
        }
    }
    m
}

/// `λ(G)`: largest magnitude after dropping the top eigenvalue.
pub fn lambda_of(eigenvalues: &[f64]) -> f64 {
    eigenvalues.iter().skip(1).fold(0.0f64, |a, x| a.max(x.abs()))
}

/// `max |1_S M 1_T| / √(|S||T|)` over disjoint nonempty `S, T`.
///
/// For fixed `S` and `|T| = k`, the best `T` takes the `k` largest (or
/// smallest) row sums from `S` outside `S`.
pub fn best_disjoint_ratio(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut best = 0.0f64;
    for s in 1u32..(1 << n) - 1 {
        let size = s.count_ones() as f64;
        let mut w: Vec<f64> = (0..n).filter(|&v| s >> v & 1 == 0).map(|v| (0..n).filter(|&u| s >> u & 1 == 1).map(|u| m[u][v]).sum()).collect();
        w.sort_by(|a, b| b.total_cmp(a));
        let (mut hi, mut lo) = (0.0, 0.0);
        let k = w.len();
        for i in 0..k {
            hi += w[i];
            lo += w[k - 1 - i];
            let denom = (size * (i + 1) as f64).sqrt();
            best = best.max(hi.abs() / denom).max(lo.abs() / denom);
        }
    }
    best
}

/// `max |e(S,T) − d|S||T|/n| / √(|S||T|)` over all nonempty `S, T`, by
/// brute force over both sets.
pub fn brute_alpha(g: &Graph, disjoint_only: bool) -> f64 {
    let n = g.n();
    let d = g.regular_degree().unwrap() as f64;
    let adj = dense(g, None);
    let mut best = 0.0f64;
    for s in 1u32..1 << n {
        for t in 1u32..1 << n {
            if disjoint_only && s & t != 0 {
                continue;
            }
            let mut e = 0.0;
            for u in (0..n).filter(|&u| s >> u & 1 == 1) {
                for v in (0..n).filter(|&v| t >> v & 1 == 1) {
                    e += adj[u][v];
                }
            }
            let (a, b) = (s.count_ones() as f64, t.count_ones() as f64);
            best = best.max((e - d * a * b / n as f64).abs() / (a * b).sqrt());
        }
    }
    best
}
