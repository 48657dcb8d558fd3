use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{regular_degree, size_limit};
use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::spectral::{adjacency, eigenvalues_sym, SymMatrix, DEFAULT_TOL};

/// Largest graph accepted by [`jumbledness_alpha_exact`].
pub const EXACT_MAX_VERTICES: usize = 22;

/// A pair of vertex sets and its normalised deviation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairScore {
    pub score: f64,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
}

impl PairScore {
    fn empty() -> Self {
        PairScore { score: f64::NEG_INFINITY, s: Vec::new(), t: Vec::new() }
    }
}

/// Best `T` for a fixed `S`.
///
/// With `c_w` the weight from `S` into `w`, a set `T` of size `b` has
/// deviation `Σ_{w∈T} c_w − unit·b`, so the extremes for each `b` are the
/// `b` largest and `b` smallest weights.
struct Responder {
    order: Vec<usize>,
}

struct Response {
    score: f64,
    top: bool,
    size: usize,
}

impl Responder {
    fn new() -> Self {
        Responder { order: Vec::new() }
    }

    fn respond(&mut self, counts: &[f64], allowed: impl Fn(usize) -> bool, s_size: usize, unit: f64) -> Option<Response> {
        self.order.clear();
        self.order.extend((0..counts.len()).filter(|&w| allowed(w)));
        if self.order.is_empty() {
            return None;
        }
        self.order.sort_by(|&a, &b| counts[b].total_cmp(&counts[a]).then(a.cmp(&b)));
        let mut best = Response { score: f64::NEG_INFINITY, top: true, size: 0 };
        for top in [true, false] {
            let mut sum = 0.0;
            for b in 1..=self.order.len() {
                let w = if top { self.order[b - 1] } else { self.order[self.order.len() - b] };
                sum += counts[w];
                let score = (sum - unit * b as f64).abs() / ((s_size * b) as f64).sqrt();
                if score > best.score {
                    best = Response { score, top, size: b };
                }
            }
        }
        Some(best)
    }

    fn set(&self, r: &Response) -> Vec<usize> {
        let len = self.order.len();
        let mut t: Vec<usize> =
            if r.top { self.order[..r.size].to_vec() } else { self.order[len - r.size..].to_vec() };
        t.sort_unstable();
        t
    }
}

/// Exact `α` of a regular graph: the largest `|e(S,T) − d|S||T|/n| / √(|S||T|)`
/// over nonempty `S, T`, or over disjoint ones when `disjoint_only`.
pub fn jumbledness_alpha_exact(graph: &Graph, disjoint_only: bool) -> Result<PairScore> {
    let d = regular_degree(graph)?;
    let n = graph.n();
    if n > EXACT_MAX_VERTICES {
        return Err(size_limit(format!(
            "exact jumbledness needs n <= {EXACT_MAX_VERTICES} (got {n}); use jumbledness_alpha_sampled"
        )));
    }
    let nbr: Vec<u32> = (0..n).map(|v| graph.neighbors(v).fold(0u32, |m, w| m | 1 << w)).collect();
    let mut counts = vec![0.0; n];
    let mut responder = Responder::new();
    let mut best = PairScore::empty();
    for s_mask in 1u32..(1u32 << n) {
        let s_size = s_mask.count_ones() as usize;
        for (c, &m) in counts.iter_mut().zip(&nbr) {
            *c = f64::from((m & s_mask).count_ones());
        }
        let unit = (d * s_size) as f64 / n as f64;
        let allowed = |w: usize| !disjoint_only || s_mask >> w & 1 == 0;
        if let Some(r) = responder.respond(&counts, allowed, s_size, unit) {
            if r.score > best.score {
                best = PairScore { score: r.score, s: mask_members(s_mask, n), t: responder.set(&r) };
            }
        }
    }
    if best.s.is_empty() {
        return Err(invalid("graph too small for a disjoint pair"));
    }
    Ok(best)
}

fn mask_members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

fn random_subset(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let k = rng.gen_range(1..=n);
    let mut s = sample(rng, n, k).into_vec();
    s.sort_unstable();
    s
}

/// Lower bound on the all-pairs `α` of a regular graph from `samples`
/// random sets `S`, each paired with its best `T` and then re-paired once
/// from the other side. Deterministic per seed.
pub fn jumbledness_alpha_sampled(graph: &Graph, samples: usize, seed: u64) -> Result<PairScore> {
    let d = regular_degree(graph)?;
    if samples == 0 {
        return Err(invalid("samples must be at least 1"));
    }
    let n = graph.n();
    let scale = d as f64 / n as f64;
    let weights = |set: &[usize], out: &mut Vec<f64>| {
        out.clear();
        out.resize(n, 0.0);
        for &u in set {
            for w in graph.neighbors(u) {
                out[w] += 1.0;
            }
        }
    };
    alternate(n, samples, seed, false, weights, scale)
}

/// Lower bound on `max |1_S·M·1_T| / √(|S||T|)` over sampled `S` with best
/// responses `T`, optionally restricted to disjoint pairs.
pub fn matrix_ratio_sampled(matrix: &SymMatrix, samples: usize, seed: u64, disjoint_only: bool) -> Result<PairScore> {
    if samples == 0 {
        return Err(invalid("samples must be at least 1"));
    }
    let n = matrix.dim();
    if n == 0 || (disjoint_only && n < 2) {
        return Err(invalid("matrix too small for a pair"));
    }
    let weights = |set: &[usize], out: &mut Vec<f64>| {
        out.clear();
        out.resize(n, 0.0);
        for &u in set {
            for (o, m) in out.iter_mut().zip(matrix.row(u)) {
                *o += m;
            }
        }
    };
    alternate(n, samples, seed, disjoint_only, weights, 0.0)
}

/// Shared sampler: `weights(S)` fills the per-vertex weight from `S`, and a
/// set of size `b` against `S` is expected to carry `scale·|S|·b`.
fn alternate(
    n: usize,
    samples: usize,
    seed: u64,
    disjoint_only: bool,
    weights: impl Fn(&[usize], &mut Vec<f64>),
    scale: f64,
) -> Result<PairScore> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut responder = Responder::new();
    let mut counts = Vec::with_capacity(n);
    let mut inside = vec![false; n];
    let mut best = PairScore::empty();
    for _ in 0..samples {
        let mut s = random_subset(n, &mut rng);
        if disjoint_only && s.len() == n {
            s.pop();
        }
        for _round in 0..2 {
            weights(&s, &mut counts);
            inside.iter_mut().for_each(|x| *x = false);
            for &v in &s {
                inside[v] = true;
            }
            let allowed = |w: usize| !disjoint_only || !inside[w];
            let Some(r) = responder.respond(&counts, allowed, s.len(), scale * s.len() as f64) else {
                break;
            };
            let t = responder.set(&r);
            if r.score > best.score {
                best = PairScore { score: r.score, s: s.clone(), t: t.clone() };
            }
            s = t;
        }
    }
    Ok(best)
}

/// `λ(G)` and the exact all-pairs `α` of a small regular graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MixingCheck {
    pub lambda: f64,
    pub alpha: f64,
}

/// Checks the mixing lemma `α ≤ λ + tol` on a small regular graph.
pub fn mixing_forward_check(graph: &Graph, tol: f64) -> Result<MixingCheck> {
    let alpha = jumbledness_alpha_exact(graph, false)?.score;
    let lambda = eigenvalues_sym(&adjacency(graph), DEFAULT_TOL)?.lambda2;
    if alpha > lambda + tol {
        return Err(Error::PropertyViolation(format!("alpha = {alpha} exceeds lambda = {lambda}")));
    }
    Ok(MixingCheck { lambda, alpha })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, make_complete, petersen, random_regular};

    /// Direct enumeration over all pairs of subsets.
    fn brute_alpha(g: &Graph, disjoint_only: bool) -> f64 {
        let n = g.n();
        let d = g.regular_degree().unwrap() as f64;
        let mut best = 0.0f64;
        for s in 1u32..1 << n {
            for t in 1u32..1 << n {
                if disjoint_only && s & t != 0 {
                    continue;
                }
                let sv = mask_members(s, n);
                let tv = mask_members(t, n);
                let e = g.edge_count_between(&sv, &tv).unwrap() as f64;
                let (a, b) = (sv.len() as f64, tv.len() as f64);
                best = best.max((e - d * a * b / n as f64).abs() / (a * b).sqrt());
            }
        }
        best
    }

    #[test]
    fn k4_disjoint_is_one_half() {
        let r = jumbledness_alpha_exact(&make_complete(4).unwrap(), true).unwrap();
        assert!((r.score - 0.5).abs() < 1e-12);
    }

    #[test]
    fn matches_brute_force() {
        let mut graphs = vec![cycle(4).unwrap(), cycle(6).unwrap(), make_complete(5).unwrap()];
        graphs.push(random_regular(8, 3, 1).unwrap());
        for g in &graphs {
            for disjoint in [true, false] {
                let got = jumbledness_alpha_exact(g, disjoint).unwrap();
                assert!((got.score - brute_alpha(g, disjoint)).abs() < 1e-12);
                // the returned pair attains the score
                let e = g.edge_count_between(&got.s, &got.t).unwrap() as f64;
                let d = g.regular_degree().unwrap() as f64;
                let (a, b) = (got.s.len() as f64, got.t.len() as f64);
                let dev = (e - d * a * b / g.n() as f64).abs() / (a * b).sqrt();
                assert!((dev - got.score).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn c4_single_pair_and_transitive_floor() {
        let g = cycle(4).unwrap();
        let e = g.edge_count_between(&[0], &[2]).unwrap() as f64;
        assert_eq!((e - 2.0 / 4.0).abs(), 0.5);
        assert!(jumbledness_alpha_exact(&g, false).unwrap().score >= 0.5);
        let p = petersen();
        assert!(jumbledness_alpha_exact(&p, true).unwrap().score >= 3.0 / 10.0);
    }

    #[test]
    fn size_limit_and_regularity() {
        let big = random_regular(24, 3, 0).unwrap();
        assert!(matches!(jumbledness_alpha_exact(&big, true), Err(Error::SizeLimit(_))));
        let path = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert!(jumbledness_alpha_exact(&path, true).is_err());
    }

    #[test]
    fn sampled_is_a_lower_bound_and_deterministic() {
        for seed in 0..5 {
            let g = random_regular(12, 4, seed).unwrap();
            let exact = jumbledness_alpha_exact(&g, false).unwrap().score;
            let a = jumbledness_alpha_sampled(&g, 50, seed).unwrap();
            assert!(a.score <= exact + 1e-12);
            assert_eq!(a, jumbledness_alpha_sampled(&g, 50, seed).unwrap());
        }
        assert!(jumbledness_alpha_sampled(&cycle(5).unwrap(), 0, 1).is_err());
    }

    #[test]
    fn matrix_sampler_reports_attained_ratio() {
        let g = petersen();
        let a = adjacency(&g);
        let r = matrix_ratio_sampled(&a, 30, 4, true).unwrap();
        assert!(r.s.iter().all(|x| !r.t.contains(x)));
        let value = a.indicator_form(&r.s, &r.t).abs() / ((r.s.len() * r.t.len()) as f64).sqrt();
        assert!((value - r.score).abs() < 1e-12);
    }

    #[test]
    fn mixing_lemma_examples() {
        for (g, lambda) in [(make_complete(4).unwrap(), 1.0), (cycle(6).unwrap(), 2.0), (petersen(), 2.0)] {
            let r = mixing_forward_check(&g, 1e-9).unwrap();
            assert!((r.lambda - lambda).abs() < 1e-9);
            assert!(r.alpha <= lambda + 1e-9);
        }
    }
}
