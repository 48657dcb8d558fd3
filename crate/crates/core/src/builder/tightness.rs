//! Examples showing the converse mixing bound cannot be improved much.
//!
//! [`outer_product_matrix`] is `x·xᵀ` with `x_i = 1/√i`: its top eigenvalue
//! is the harmonic number `H_n ≈ ln n`, while every 0/1 pair has
//! `uᵀAv ≤ 4·√(|u||v|)`.
//!
//! [`tightness_family`] assembles classes `V_0, …, V_t` with
//! `|V_i| = 4^i·N`, a random regular graph inside each class and a random
//! biregular bipartite graph between classes, with per-vertex degrees
//! `d_{i,j} = Δ·4^j ± Δ·2^{j−i}` (plus iff `i, j < t` or `i = j = t`).
//! The test vector with entries `2^{−i}` on `V_i` (`i < t`) and `−2^{−t}`
//! on `V_t` has Rayleigh quotient about `Δ(t+1)`, while the graph stays
//! `(d, O(Δ))`-jumbled.

use serde::Serialize;

use crate::discrepancy::matrix_ratio_sampled;
use crate::error::{invalid, Error, Result};
use crate::graph::{random_biregular_bipartite, random_regular, Graph};
use crate::spectral::{adjacency, eigenvalues_sym, spectral_radius, SymMatrix};

const MAX_T: usize = 12;

/// `A_{ij} = 1/√(i·j)` for `1 ≤ i, j ≤ n`.
pub fn outer_product_matrix(n: usize) -> Result<SymMatrix> {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    Ok(SymMatrix::from_upper(n, |i, j| 1.0 / (((i + 1) * (j + 1)) as f64).sqrt()))
}

/// Per-vertex degree from `V_i` into `V_j`, with `τ = (4^{t+1} − 1)/3` and `d = τΔ`.
///
/// Fails if some `Δ·2^{j−i}` is fractional, naming the first such `(i, j)`.
pub fn degree_table(delta: usize, t: usize) -> Result<Vec<Vec<usize>>> {
    if t == 0 || t > MAX_T {
        return Err(invalid(format!("t must be in 1..={MAX_T}, got {t}")));
    }
    if delta == 0 {
        return Err(invalid("delta must be positive"));
    }
    let mut table = vec![vec![0usize; t + 1]; t + 1];
    for i in 0..=t {
        for j in 0..=t {
            let main = delta << (2 * j);
            let skew = if j >= i {
                delta << (j - i)
            } else {
                let div = 1usize << (i - j);
                if delta % div != 0 {
                    return Err(invalid(format!("degree d[{i}][{j}] is not an integer: {delta}/{div}")));
                }
                delta / div
            };
            let plus = (i < t && j < t) || (i == t && j == t);
            table[i][j] = if plus { main + skew } else { main - skew };
        }
    }
    Ok(table)
}

/// Parameters and per-block measurements of one generated family member.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TightnessFamily {
    pub t: usize,
    pub delta: usize,
    pub n_base: usize,
    pub tau: usize,
    /// `τΔ`.
    pub d: usize,
    pub class_sizes: Vec<usize>,
    /// `degrees[i][j]`: neighbours in `V_j` of each vertex of `V_i`.
    pub degrees: Vec<Vec<usize>>,
    /// Measured spectral deviation of each block: `λ` of the regular graph
    /// inside `V_i` on the diagonal, the top singular value of the centred
    /// biadjacency matrix off it.
    pub block_alpha: Vec<Vec<f64>>,
}

impl TightnessFamily {
    fn offsets(&self) -> Vec<usize> {
        self.class_sizes
            .iter()
            .scan(0, |acc, &s| {
                let start = *acc;
                *acc += s;
                Some(start)
            })
            .collect()
    }

    /// `2^{−i}` on `V_i` for `i < t`, `−2^{−t}` on `V_t`.
    pub fn test_vector(&self) -> Vec<f64> {
        let mut x = Vec::with_capacity(self.class_sizes.iter().sum());
        for (i, &size) in self.class_sizes.iter().enumerate() {
            let value = 0.5f64.powi(i as i32);
            x.extend(std::iter::repeat_n(if i < self.t { value } else { -value }, size));
        }
        x
    }
}

/// Generates one member of the family, deterministic per seed.
pub fn tightness_family(delta: usize, t: usize, n_base: usize, seed: u64) -> Result<(Graph, TightnessFamily)> {
    let degrees = degree_table(delta, t)?;
    if n_base == 0 {
        return Err(invalid("N must be positive"));
    }
    let class_sizes: Vec<usize> = (0..=t).map(|i| n_base << (2 * i)).collect();
    for i in 0..=t {
        for j in 0..=t {
            if degrees[i][j] * class_sizes[i] != degrees[j][i] * class_sizes[j] {
                return Err(Error::InternalConsistency(format!("handshake fails between classes {i} and {j}")));
            }
            let room = if i == j { class_sizes[j] - 1 } else { class_sizes[j] };
            if degrees[i][j] > room {
                return Err(invalid(format!("degree {} from class {i} exceeds the {room} available in class {j}", degrees[i][j])));
            }
        }
    }
    let tau = ((1usize << (2 * (t + 1))) - 1) / 3;
    let mut family = TightnessFamily {
        t,
        delta,
        n_base,
        tau,
        d: tau * delta,
        class_sizes,
        degrees,
        block_alpha: vec![vec![0.0; t + 1]; t + 1],
    };
    let offsets = family.offsets();
    let sizes = family.class_sizes.clone();
    let mut edges = Vec::new();
    let mut block_seed = seed;
    let mut next_seed = || {
        block_seed = block_seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        block_seed
    };
    for i in 0..=t {
        let d_ii = family.degrees[i][i];
        if d_ii > 0 {
            let inner = random_regular(sizes[i], d_ii, next_seed())?;
            family.block_alpha[i][i] = eigenvalues_sym(&adjacency(&inner), crate::spectral::DEFAULT_TOL)?.lambda2;
            edges.extend(inner.edges().iter().map(|&(u, v)| (offsets[i] + u, offsets[i] + v)));
        }
        for j in i + 1..=t {
            let (d_ij, d_ji) = (family.degrees[i][j], family.degrees[j][i]);
            if d_ij == 0 {
                continue;
            }
            let pairs = random_biregular_bipartite(sizes[i], d_ij, sizes[j], d_ji, next_seed())?;
            let alpha = centred_block_radius(&pairs, sizes[i], sizes[j], d_ij);
            family.block_alpha[i][j] = alpha;
            family.block_alpha[j][i] = alpha;
            edges.extend(pairs.iter().map(|&(u, v)| (offsets[i] + u, offsets[j] + v)));
        }
    }
    let graph = Graph::new(offsets[t] + sizes[t], edges)?;
    Ok((graph, family))
}

/// Top singular value of `B − (d_left/right)·J` for the biadjacency matrix `B`.
fn centred_block_radius(pairs: &[(usize, usize)], left: usize, right: usize, left_deg: usize) -> f64 {
    let shift = left_deg as f64 / right as f64;
    let mut m = SymMatrix::from_upper(left + right, |a, b| if a < left && b >= left { -shift } else { 0.0 });
    for &(u, v) in pairs {
        m.set(u, left + v, 1.0 - shift);
    }
    spectral_radius(&m)
}

/// Measurements of a generated family member against the centred matrix
/// `M = A − (2m/n²)·J`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TightnessReport {
    /// Certified spectral radius of `M`.
    pub lambda_centered: f64,
    /// `xᵀMx / ‖x‖²` for the family's test vector.
    pub rayleigh: f64,
    /// `Δ(t+1)`.
    pub lambda_target: f64,
    /// Best disjoint-pair ratio of `M` found by sampling.
    pub alpha_sampled: f64,
    /// `7Δ`.
    pub alpha_reference: f64,
    pub min_degree: usize,
    pub max_degree: usize,
}

pub fn tightness_measure(graph: &Graph, family: &TightnessFamily, samples: usize, seed: u64, tol: f64) -> Result<TightnessReport> {
    let n = graph.n();
    if n != family.class_sizes.iter().sum::<usize>() {
        return Err(invalid("graph does not match the family's class sizes"));
    }
    let density = 2.0 * graph.m() as f64 / (n * n) as f64;
    let centred = adjacency(graph).shifted_by_ones(-density);
    let x = family.test_vector();
    let rayleigh = centred.quadratic_form(&x) / x.iter().map(|v| v * v).sum::<f64>();
    Ok(TightnessReport {
        lambda_centered: eigenvalues_sym(&centred, tol)?.radius,
        rayleigh,
        lambda_target: (family.delta * (family.t + 1)) as f64,
        alpha_sampled: matrix_ratio_sampled(&centred, samples, seed, true)?.score,
        alpha_reference: 7.0 * family.delta as f64,
        min_degree: graph.degrees().into_iter().min().unwrap_or(0),
        max_degree: graph.max_degree(),
    })
}
