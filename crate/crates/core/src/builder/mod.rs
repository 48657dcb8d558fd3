//! The iterated-lift expander builder.
//!
//! Starting from `K_{d+1}`, each level picks a signing of the current graph
//! and replaces the graph by its 2-lift. The lift keeps every old eigenvalue
//! and adds the signed spectrum, so `λ(G_i) = max(λ(G_{i−1}), ρ(A_s))`.
//! Every level is certified by a full eigensolve of the lifted graph.

mod tightness;

pub use tightness::{degree_table, outer_product_matrix, tightness_family, tightness_measure, TightnessFamily, TightnessReport};

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::graph::{make_complete, two_lift, Graph, Signing};
use crate::signing::{
    conjecture_probe, derandomize_conditional, local_refinement, pair_position, LiftChain, SampleSpace, SearchParams,
};
use crate::spectral::{adjacency, eigenvalues_sym, signed_adjacency, spectral_radius, DEFAULT_TOL};

/// Largest gap tolerated between the running `λ` and a direct eigensolve.
pub const COMPOSITION_TOL: f64 = 1e-6;

/// How each level's signing is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Independent uniform signings until one meets the target.
    Random,
    /// Conditional expectations on the walk-trace estimator.
    Derandomized,
    /// Points of a small-bias space indexed by vertex pairs.
    SampleSpace,
    /// Witness-driven local redraws.
    LocalRefine,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [Strategy::Random, Strategy::Derandomized, Strategy::SampleSpace, Strategy::LocalRefine];

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Random => "random",
            Strategy::Derandomized => "derandomized",
            Strategy::SampleSpace => "sample-space",
            Strategy::LocalRefine => "local-refine",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| invalid(format!("unknown strategy {s:?} (expected random, derandomized, sample-space or local-refine)")))
    }
}

/// Builder knobs. Unset fields take the per-level defaults of [`SearchParams`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BuildParams {
    pub budget: usize,
    pub seed: u64,
    pub l: Option<usize>,
    pub t_sparse: Option<usize>,
    /// New-eigenvalue bound each level aims for; defaults to `2√(d−1)`.
    pub target_radius: Option<f64>,
    pub tol: f64,
}

impl Default for BuildParams {
    fn default() -> Self {
        BuildParams { budget: 1000, seed: 0, l: None, t_sparse: None, target_radius: None, tol: DEFAULT_TOL }
    }
}

impl BuildParams {
    fn search(&self, n: usize, d: usize, level: usize) -> SearchParams {
        let mut p = SearchParams::new(n, d);
        p.budget = self.budget;
        p.seed = self.seed.wrapping_mul(0x2545_f491_4f6c_dd1d).wrapping_add(level as u64);
        if let Some(l) = self.l {
            p.l = l;
        }
        if let Some(t) = self.t_sparse {
            p.t_sparse = t;
        }
        if let Some(r) = self.target_radius {
            p.target_radius = r;
        }
        p
    }
}

/// One lift of a build.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelRecord {
    /// 1-based level index.
    pub level: usize,
    /// Vertices after the lift.
    pub n: usize,
    /// Where the signing came from.
    pub source: String,
    /// Candidate signings (or refinement steps) examined.
    pub candidates: usize,
    /// Spectral radius of the chosen signing (the largest new eigenvalue magnitude).
    pub radius_new: f64,
    pub new_max: f64,
    pub new_min: f64,
    /// Running `max(λ(G_{i−1}), radius_new)`.
    pub lambda: f64,
    /// `λ` of the lifted graph from its own eigensolve.
    pub lambda_direct: f64,
    pub met_target: bool,
    #[serde(skip)]
    pub wall_time: Duration,
}

/// Everything a build did, level by level.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BuildRecord {
    pub d: usize,
    pub target_n: usize,
    pub strategy: Strategy,
    pub target_radius: f64,
    pub base_lambda: f64,
    pub levels: Vec<LevelRecord>,
    pub final_lambda: f64,
    /// True if every level met the target radius.
    pub converged: bool,
    pub connected: bool,
    /// Where the final graph was written, if anywhere.
    pub graph_path: Option<String>,
    #[serde(skip)]
    pub signings: Vec<Signing>,
}

impl BuildRecord {
    /// The build as an explicit lift chain over `K_{d+1}`.
    pub fn to_chain(&self) -> Result<LiftChain> {
        let mut chain = LiftChain::new(make_complete(self.d + 1)?);
        for s in &self.signings {
            chain.push_explicit(s.clone())?;
        }
        Ok(chain)
    }

    pub fn total_time(&self) -> Duration {
        self.levels.iter().map(|l| l.wall_time).sum()
    }
}

/// Lifts `K_{d+1}` until it has `target_n = (d+1)·2^i` vertices.
///
/// A level that exhausts its budget keeps the best signing it saw and the
/// build continues; [`BuildRecord::converged`] is then false.
pub fn build_expander(d: usize, target_n: usize, strategy: Strategy, params: &BuildParams) -> Result<(Graph, BuildRecord)> {
    if d == 0 {
        return Err(invalid("degree must be at least 1"));
    }
    let base_n = d + 1;
    if target_n < base_n || target_n % base_n != 0 || !(target_n / base_n).is_power_of_two() {
        return Err(invalid(format!("target_n must be (d+1)·2^i = {base_n}·2^i, got {target_n}")));
    }
    if params.budget == 0 {
        return Err(invalid("budget must be at least 1"));
    }
    let depth = (target_n / base_n).trailing_zeros() as usize;
    let mut graph = make_complete(base_n)?;
    let base_lambda = eigenvalues_sym(&adjacency(&graph), params.tol)?.lambda2;
    let mut lambda = base_lambda;
    let mut levels = Vec::with_capacity(depth);
    let mut signings = Vec::with_capacity(depth);
    let target_radius = params.search(base_n, d, 0).target_radius;

    for level in 1..=depth {
        let start = Instant::now();
        let search = params.search(graph.n(), d, level);
        let choice = choose(&graph, strategy, &search)?;
        let spectrum = eigenvalues_sym(&signed_adjacency(&graph, &choice.signing)?, params.tol)?;
        let (lift, _) = two_lift(&graph, &choice.signing)?;
        lambda = lambda.max(spectrum.radius);
        let lambda_direct = eigenvalues_sym(&adjacency(&lift), params.tol)?.lambda2;
        if (lambda_direct - lambda).abs() > COMPOSITION_TOL {
            return Err(Error::InternalConsistency(format!(
                "level {level}: running lambda {lambda} but the lift has {lambda_direct}"
            )));
        }
        levels.push(LevelRecord {
            level,
            n: lift.n(),
            source: choice.source,
            candidates: choice.candidates,
            radius_new: spectrum.radius,
            new_max: spectrum.max(),
            new_min: spectrum.min(),
            lambda,
            lambda_direct,
            met_target: spectrum.radius <= search.target_radius + 1e-9,
            wall_time: start.elapsed(),
        });
        signings.push(choice.signing);
        graph = lift;
    }

    let record = BuildRecord {
        d,
        target_n,
        strategy,
        target_radius,
        base_lambda,
        converged: levels.iter().all(|l| l.met_target),
        final_lambda: lambda,
        connected: graph.is_connected(),
        levels,
        graph_path: None,
        signings,
    };
    Ok((graph, record))
}

struct Choice {
    signing: Signing,
    source: String,
    candidates: usize,
}

fn choose(graph: &Graph, strategy: Strategy, params: &SearchParams) -> Result<Choice> {
    match strategy {
        Strategy::Random => {
            let mut p = params.clone();
            p.exhaustive_max_edges = 0;
            let probe = conjecture_probe(graph, &p)?;
            Ok(Choice { signing: probe.best, source: format!("random seed={}", p.seed), candidates: probe.examined })
        }
        Strategy::Derandomized => {
            let out = derandomize_conditional(graph, params)?;
            Ok(Choice { signing: out.signing, source: format!("derandomized l={} X={}", params.l, out.final_value), candidates: 1 })
        }
        Strategy::SampleSpace => sample_space_level(graph, params),
        Strategy::LocalRefine => {
            let r = local_refinement(graph, params)?;
            Ok(Choice { signing: r.signing, source: format!("local-refine seed={}", params.seed), candidates: r.iterations + 1 })
        }
    }
}

/// Draws points `(x, y)` of the pair-indexed space over `GF(2^s)` until one
/// meets the target. The chosen point reproduces the level's signing in a
/// [`LiftChain`] sample-space level.
fn sample_space_level(graph: &Graph, params: &SearchParams) -> Result<Choice> {
    let n = graph.n();
    let pairs = n * (n - 1) / 2;
    let s = (crate::signing::ceil_log2(pairs.max(2)) + 2).min(31) as u32;
    let space = SampleSpace::new(pairs, s)?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let target = params.target_radius + 1e-9;
    let mut best: Option<(f64, Signing, u64, u64)> = None;
    let mut candidates = 0;
    for _ in 0..params.budget {
        candidates += 1;
        let (x, y) = (rng.gen_range(0..1u64 << s), rng.gen_range(0..1u64 << s));
        let signs = graph
            .edges()
            .iter()
            .map(|&(u, v)| space.bit_at(x, y, pair_position(n, u.min(v), u.max(v))))
            .collect::<Result<Vec<i8>>>()?;
        let signing = Signing::new(signs)?;
        let r = spectral_radius(&signed_adjacency(graph, &signing)?);
        if best.as_ref().is_none_or(|b| r < b.0) {
            best = Some((r, signing, x, y));
        }
        if r <= target {
            break;
        }
    }
    let (_, signing, x, y) = best.expect("budget is at least 1");
    Ok(Choice { signing, source: format!("sample-space s={s} x={x} y={y}"), candidates })
}
