//! Finding good signings.
//!
//! A signing is good for a `d`-regular graph on `n` vertices when its
//! signed spectral radius is at most `10·√d·(log d)^{3/2}` and its lift is
//! `(γ, 1 + ⌈log n⌉)`-sparse with `γ = 10·√(d log d)`. The searches here
//! range from plain random draws to a fully deterministic method of
//! conditional expectations ([`derandomize_conditional`]) and scans over a
//! small-bias sample space ([`search_sample_space`]).

mod chain;
mod sample_space;
mod walks;

pub use chain::{ChainLevel, ChainSpec, LevelSource, LiftChain};
pub(crate) use chain::pair_position;
pub use sample_space::{epsilon_biased_space, search_sample_space, SampleObjective, SampleSearch, SampleSpace};
pub use walks::{derandomize_conditional, exact_x, expected_x_partial, Derandomized};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::discrepancy::{best_witness, regular_degree, sparse_check, SparseViolation};
use crate::error::{invalid, Error, Result};
use crate::graph::{two_lift, Graph, Signing};
use crate::spectral::{eigen_decompose, eigenvalues_sym, signed_adjacency, spectral_radius, DEFAULT_TOL};

/// Largest edge count [`exhaustive_best_signing`] accepts.
pub const EXHAUSTIVE_MAX_EDGES: usize = 26;

const DEFAULT_BUDGET: usize = 1000;
const WALK_LENGTH_CAP: usize = 8;

pub(crate) fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Knobs shared by the signing searches.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchParams {
    /// Sparsity threshold `γ`.
    pub gamma: f64,
    /// Radius allowed by the goodness test.
    pub radius_threshold: f64,
    /// Radius the searches aim for.
    pub target_radius: f64,
    /// Maximum number of candidate signings (or refinement steps).
    pub budget: usize,
    /// Even closed-walk length for the derandomized estimator.
    pub l: usize,
    /// Sparsity depth; violations are sought on supports of `t_sparse + 1` vertices.
    pub t_sparse: usize,
    /// Largest edge count for which [`conjecture_probe`] enumerates every signing.
    pub exhaustive_max_edges: usize,
    pub seed: u64,
}

impl SearchParams {
    /// Defaults for a `d`-regular graph on `n` vertices.
    pub fn new(n: usize, d: usize) -> Self {
        let df = d as f64;
        let log_d = if d >= 2 { df.log2() } else { 0.0 };
        let log_n = ceil_log2(n);
        SearchParams {
            gamma: 10.0 * (df * log_d).sqrt(),
            radius_threshold: 10.0 * df.sqrt() * log_d.powf(1.5),
            target_radius: 2.0 * (df - 1.0).max(0.0).sqrt(),
            budget: DEFAULT_BUDGET,
            l: (2 * log_n).clamp(2, WALK_LENGTH_CAP),
            t_sparse: log_n.max(1),
            exhaustive_max_edges: EXHAUSTIVE_MAX_EDGES,
            seed: 0,
        }
    }

    /// Defaults for a regular graph.
    pub fn for_graph(graph: &Graph) -> Result<Self> {
        Ok(SearchParams::new(graph.n(), regular_degree(graph)?))
    }

    pub fn validate(&self) -> Result<()> {
        if self.l < 2 || self.l % 2 != 0 {
            return Err(invalid(format!("walk length must be even and >= 2, got {}", self.l)));
        }
        if self.budget == 0 {
            return Err(invalid("budget must be at least 1"));
        }
        if !(self.gamma >= 0.0) || !(self.target_radius >= 0.0) || !(self.radius_threshold >= 0.0) {
            return Err(invalid("thresholds must be non-negative"));
        }
        Ok(())
    }
}

/// Uniform independent signs, deterministic per seed.
pub fn random_signing(graph: &Graph, seed: u64) -> Signing {
    random_signs(graph.m(), &mut ChaCha8Rng::seed_from_u64(seed))
}

fn random_signs(m: usize, rng: &mut ChaCha8Rng) -> Signing {
    Signing::new((0..m).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect()).expect("±1 by construction")
}

/// A signing of least spectral radius, by enumerating all `2^{m-1}`
/// signings with the first edge fixed to `+1` (negating a signing negates
/// its spectrum). Ties go to the earliest signing in enumeration order.
pub fn exhaustive_best_signing(graph: &Graph) -> Result<(Signing, f64)> {
    let m = graph.m();
    if m > EXHAUSTIVE_MAX_EDGES {
        return Err(Error::SizeLimit(format!("exhaustive search needs m <= {EXHAUSTIVE_MAX_EDGES}, got {m}")));
    }
    if m == 0 {
        return Ok((Signing::all_positive(0), 0.0));
    }
    let mut best = (f64::INFINITY, 0u64);
    for mask in 0..1u64 << (m - 1) {
        let s = Signing::from_mask(m, mask << 1);
        let r = spectral_radius(&signed_adjacency(graph, &s)?);
        if r < best.0 {
            best = (r, mask);
        }
    }
    let s = Signing::from_mask(m, best.1 << 1);
    let radius = eigenvalues_sym(&signed_adjacency(graph, &s)?, DEFAULT_TOL)?.radius;
    Ok((s, radius))
}

/// Outcome of [`conjecture_probe`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeResult {
    /// Whether a signing with radius at most the target was found.
    pub found: bool,
    pub best: Signing,
    pub radius: f64,
    /// True if every signing was (or would have been) examined.
    pub exhaustive: bool,
    pub examined: usize,
}

/// Looks for a signing with radius at most `params.target_radius`
/// (by default `2√(d−1)`). Enumerates every signing when the graph has at
/// most `params.exhaustive_max_edges` edges, otherwise draws
/// `params.budget` random signings. Stops at the first success; reports
/// the best signing seen either way.
pub fn conjecture_probe(graph: &Graph, params: &SearchParams) -> Result<ProbeResult> {
    regular_degree(graph)?;
    params.validate()?;
    let m = graph.m();
    let target = params.target_radius + 1e-9;
    let exhaustive = m <= params.exhaustive_max_edges.min(EXHAUSTIVE_MAX_EDGES);
    let mut best: Option<(f64, Signing)> = None;
    let mut examined = 0;
    let mut consider = |s: Signing, examined: &mut usize| -> Result<bool> {
        *examined += 1;
        let r = spectral_radius(&signed_adjacency(graph, &s)?);
        if best.as_ref().is_none_or(|(b, _)| r < *b) {
            best = Some((r, s));
        }
        Ok(r <= target)
    };
    if exhaustive {
        let count = if m == 0 { 1 } else { 1u64 << (m - 1) };
        for mask in 0..count {
            if consider(Signing::from_mask(m, mask << 1), &mut examined)? {
                break;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        for _ in 0..params.budget {
            if consider(random_signs(m, &mut rng), &mut examined)? {
                break;
            }
        }
    }
    let (_, signing) = best.expect("at least one signing examined");
    let radius = eigenvalues_sym(&signed_adjacency(graph, &signing)?, DEFAULT_TOL)?.radius;
    Ok(ProbeResult { found: radius <= target, best: signing, radius, exhaustive, examined })
}

/// The goodness test for one signing.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GoodnessReport {
    pub radius: f64,
    pub radius_threshold: f64,
    /// Whether the lift is `(γ, 1 + ⌈log n⌉)`-sparse.
    pub sparse_ok: bool,
    pub violation: Option<SparseViolation>,
    pub is_good: bool,
}

/// Certified radius plus a sparsity check of the materialised lift.
pub fn is_good_signing(graph: &Graph, signing: &Signing, params: &SearchParams) -> Result<GoodnessReport> {
    regular_degree(graph)?;
    let radius = eigenvalues_sym(&signed_adjacency(graph, signing)?, DEFAULT_TOL)?.radius;
    let (lift, _) = two_lift(graph, signing)?;
    let depth = 1 + ceil_log2(graph.n());
    let sparse = sparse_check(&lift, params.gamma, depth).map_err(|e| match e {
        Error::SizeLimit(msg) => Error::SizeLimit(format!("{msg} (signed radius {radius})")),
        other => other,
    })?;
    let is_good = radius <= params.radius_threshold && sparse.sparse;
    Ok(GoodnessReport {
        radius,
        radius_threshold: params.radius_threshold,
        sparse_ok: sparse.sparse,
        violation: sparse.violation,
        is_good,
    })
}

/// Outcome of [`local_refinement`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Refinement {
    /// Best signing seen.
    pub signing: Signing,
    /// Its certified radius.
    pub radius: f64,
    pub iterations: usize,
    /// Radius after each step, starting with the initial signing.
    pub trace: Vec<f64>,
    pub converged: bool,
}

/// Random start, then repeatedly find a discrepancy witness `(u, v)` in
/// the signed matrix and redraw the signs of the edges between `supp(u)`
/// and `supp(v)` (or inside their union if there are none), until the
/// radius is at most the target or `params.budget` steps have run.
pub fn local_refinement(graph: &Graph, params: &SearchParams) -> Result<Refinement> {
    local_refinement_from(graph, random_signing(graph, params.seed), params)
}

pub fn local_refinement_from(graph: &Graph, start: Signing, params: &SearchParams) -> Result<Refinement> {
    params.validate()?;
    start.check_aligned(graph)?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ 0x9e37_79b9_7f4a_7c15);
    let target = params.target_radius + 1e-9;
    let mut current = start;
    let mut radius = spectral_radius(&signed_adjacency(graph, &current)?);
    let mut trace = vec![radius];
    let mut best = (radius, current.clone());
    let mut iterations = 0;
    while radius > target && iterations < params.budget && graph.m() > 0 {
        iterations += 1;
        let matrix = signed_adjacency(graph, &current)?;
        let eig = eigen_decompose(&matrix, DEFAULT_TOL)?;
        let witness = best_witness(&matrix, &eig.vectors[eig.extremal_index()])?;
        for e in edges_to_redraw(graph, &witness.u, &witness.v) {
            current.set(e, if rng.gen::<bool>() { 1 } else { -1 });
        }
        radius = spectral_radius(&signed_adjacency(graph, &current)?);
        trace.push(radius);
        if radius < best.0 {
            best = (radius, current.clone());
        }
    }
    let signing = best.1;
    let radius = eigenvalues_sym(&signed_adjacency(graph, &signing)?, DEFAULT_TOL)?.radius;
    Ok(Refinement { converged: radius <= target, signing, radius, iterations, trace })
}

fn edges_to_redraw(graph: &Graph, u: &[usize], v: &[usize]) -> Vec<usize> {
    let mut side = vec![0u8; graph.n()];
    u.iter().for_each(|&x| side[x] = 1);
    v.iter().for_each(|&x| side[x] = 2);
    let between: Vec<usize> = graph
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, &(a, b))| side[a] * side[b] == 2)
        .map(|(e, _)| e)
        .collect();
    if !between.is_empty() {
        return between;
    }
    let inside: Vec<usize> =
        graph.edges().iter().enumerate().filter(|(_, &(a, b))| side[a] > 0 && side[b] > 0).map(|(e, _)| e).collect();
    if !inside.is_empty() {
        return inside;
    }
    graph.edges().iter().enumerate().filter(|(_, &(a, b))| side[a] > 0 || side[b] > 0).map(|(e, _)| e).collect()
}

#[cfg(test)]
mod tests;
