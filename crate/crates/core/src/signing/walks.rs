//! The pessimistic estimator `X = trace(A_s^l) + Z` and its conditional
//! expectation under partially fixed signs.
//!
//! `trace(A_s^l)` is a sum over closed walks of the product of the signs
//! along the walk. Only edges used an odd number of times matter, so walks
//! are grouped by that odd edge set; with uniform signs on the unfixed
//! edges a group contributes only if all of its odd edges are fixed.
//!
//! `Z` charges `d^l` for every lifted vertex set that takes one vertex over
//! each vertex of a connected base set of size `t_sparse + 1` and induces a
//! sparsity violation at threshold `γ`. A violation needs `γ < d`, since
//! `uᵀAv ≤ d·min(|U|, |V|)`, so above that `Z` is identically zero.

use std::collections::HashMap;

use serde::Serialize;

use super::SearchParams;
use crate::discrepancy::{local_violation, regular_degree};
use crate::error::{invalid, Error, Result};
use crate::graph::{connected_subsets, Graph, Signing};

const MAX_WALKS: f64 = 5e7;
const MAX_SUPPORT_EDGES: usize = 20;
// fibre choices times edge completions per support, as a power of 2
const MAX_SUPPORT_WORK_LOG: usize = 26;

struct Support {
    edges: Vec<usize>,
    // local endpoints of each edge
    ends: Vec<(usize, usize)>,
    size: usize,
    // violating[mask] for each set of present internal lifted edges
    violating: Vec<bool>,
}

pub(crate) struct Estimator {
    m: usize,
    even_walks: i64,
    // walk groups keyed by their largest odd edge: (other odd edges, walk count)
    by_max: Vec<Vec<(Vec<u32>, i64)>>,
    supports: Vec<Support>,
    by_edge: Vec<Vec<usize>>,
    penalty: f64,
}

impl Estimator {
    pub(crate) fn new(graph: &Graph, params: &SearchParams) -> Result<Self> {
        params.validate()?;
        let d = regular_degree(graph)?;
        let l = params.l;
        let m = graph.m();
        let estimate = graph.n() as f64 * (d as f64).powi(l as i32);
        if estimate > MAX_WALKS {
            return Err(Error::SizeLimit(format!("about {estimate:e} closed walks of length {l}")));
        }
        let mut groups: HashMap<Vec<u32>, i64> = HashMap::new();
        let mut odd = Vec::with_capacity(l);
        for start in 0..graph.n() {
            walk(graph, start, start, l, &mut odd, &mut groups);
        }
        let mut keyed: Vec<(Vec<u32>, i64)> = groups.into_iter().collect();
        keyed.sort_unstable();
        let mut even_walks = 0;
        let mut by_max = vec![Vec::new(); m];
        for (mut set, count) in keyed {
            match set.pop() {
                None => even_walks = count,
                Some(top) => by_max[top as usize].push((set, count)),
            }
        }

        let mut supports = Vec::new();
        let mut by_edge = vec![Vec::new(); m];
        if params.gamma < d as f64 {
            let size = params.t_sparse + 1;
            if size > 31 {
                return Err(invalid("t_sparse too large"));
            }
            for set in connected_subsets(graph, size).filter(|w| w.len() == size) {
                let support = build_support(graph, set, params.gamma)?;
                for &e in &support.edges {
                    by_edge[e].push(supports.len());
                }
                supports.push(support);
            }
        }
        Ok(Estimator { m, even_walks, by_max, supports, by_edge, penalty: (d as f64).powi(l as i32) })
    }

    fn check(&self, partial: &[Option<i8>]) -> Result<()> {
        if partial.len() != self.m {
            return Err(invalid(format!("assignment has {} entries for {} edges", partial.len(), self.m)));
        }
        if partial.iter().flatten().any(|&s| s != 1 && s != -1) {
            return Err(invalid("assigned signs must be ±1"));
        }
        Ok(())
    }

    /// `E[trace(A_s^l)]` over the unfixed signs.
    fn walk_part(&self, partial: &[Option<i8>]) -> f64 {
        let mut total = self.even_walks;
        for (top, groups) in self.by_max.iter().enumerate() {
            let Some(s) = partial[top] else { continue };
            total += i64::from(s) * group_sum(groups, partial);
        }
        total as f64
    }

    /// Expected number of violating lifted supports.
    fn violation_part(&self, partial: &[Option<i8>]) -> f64 {
        self.supports.iter().map(|s| probability(s, partial)).sum()
    }

    pub(crate) fn expected(&self, partial: &[Option<i8>]) -> Result<f64> {
        self.check(partial)?;
        Ok(self.walk_part(partial) + self.penalty * self.violation_part(partial))
    }
}

/// `Σ count·Π signs` over groups whose other edges are all fixed.
fn group_sum(groups: &[(Vec<u32>, i64)], partial: &[Option<i8>]) -> i64 {
    let mut sum = 0;
    for (others, count) in groups {
        let mut sign = 1i64;
        let mut complete = true;
        for &e in others {
            match partial[e as usize] {
                Some(s) => sign *= i64::from(s),
                None => {
                    complete = false;
                    break;
                }
            }
        }
        if complete {
            sum += sign * count;
        }
    }
    sum
}

fn walk(graph: &Graph, start: usize, at: usize, left: usize, odd: &mut Vec<u32>, groups: &mut HashMap<Vec<u32>, i64>) {
    if left == 0 {
        if at == start {
            *groups.entry(odd.clone()).or_insert(0) += 1;
        }
        return;
    }
    for &(w, e) in graph.incident(at) {
        let e = e as u32;
        match odd.binary_search(&e) {
            Ok(pos) => {
                odd.remove(pos);
                walk(graph, start, w, left - 1, odd, groups);
                odd.insert(pos, e);
            }
            Err(pos) => {
                odd.insert(pos, e);
                walk(graph, start, w, left - 1, odd, groups);
                odd.remove(pos);
            }
        }
    }
}

fn build_support(graph: &Graph, set: Vec<usize>, gamma: f64) -> Result<Support> {
    let mut edges = Vec::new();
    let mut ends = Vec::new();
    for (a, &x) in set.iter().enumerate() {
        for (b, &y) in set.iter().enumerate().skip(a + 1) {
            if let Some(e) = graph.edge_index(x, y) {
                edges.push(e);
                ends.push((a, b));
            }
        }
    }
    let k = edges.len();
    if k > MAX_SUPPORT_EDGES || set.len() - 1 + k > MAX_SUPPORT_WORK_LOG {
        return Err(Error::SizeLimit(format!("support with {k} internal edges")));
    }
    let violating = (0..1u32 << k)
        .map(|mask| {
            let mut adj = vec![0u32; set.len()];
            for (j, &(a, b)) in ends.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    adj[a] |= 1 << b;
                    adj[b] |= 1 << a;
                }
            }
            local_violation(&adj, gamma).is_some()
        })
        .collect();
    Ok(Support { edges, ends, size: set.len(), violating })
}

/// Probability over the unfixed signs and summed over fibre choices that
/// the lifted support violates sparsity.
///
/// The lifted edge over internal edge `(a, b)` is present iff
/// `s_e·τ_a·τ_b = +1`, where `τ` records which fibre each vertex uses.
/// Fixing the first vertex's fibre counts each lifted set once up to the
/// fibre swap, which is an automorphism of the lift.
fn probability(support: &Support, partial: &[Option<i8>]) -> f64 {
    if !support.violating.iter().any(|&v| v) {
        return 0.0;
    }
    let free: Vec<usize> = (0..support.edges.len()).filter(|&j| partial[support.edges[j]].is_none()).collect();
    let mut hits = 0u64;
    for tau in 0..1u32 << (support.size - 1) {
        let tau = tau << 1;
        let mut fixed = 0u32;
        for (j, &(a, b)) in support.ends.iter().enumerate() {
            if let Some(s) = partial[support.edges[j]] {
                let crossing = (tau >> a ^ tau >> b) & 1 == 1;
                if (s > 0) != crossing {
                    fixed |= 1 << j;
                }
            }
        }
        for bits in 0..1u32 << free.len() {
            let mut mask = fixed;
            for (i, &j) in free.iter().enumerate() {
                mask |= (bits >> i & 1) << j;
            }
            if support.violating[mask as usize] {
                hits += 1;
            }
        }
    }
    hits as f64 / (1u64 << free.len()) as f64
}

/// `E[X]` with the signs in `partial` fixed and the rest uniform.
pub fn expected_x_partial(graph: &Graph, partial: &[Option<i8>], params: &SearchParams) -> Result<f64> {
    Estimator::new(graph, params)?.expected(partial)
}

/// `X` of a complete signing: `trace(A_s^l)` plus `d^l` per violating lifted support.
pub fn exact_x(graph: &Graph, signing: &Signing, params: &SearchParams) -> Result<f64> {
    signing.check_aligned(graph)?;
    let partial: Vec<Option<i8>> = signing.as_slice().iter().map(|&s| Some(s)).collect();
    expected_x_partial(graph, &partial, params)
}

/// Result of [`derandomize_conditional`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Derandomized {
    pub signing: Signing,
    /// `E[X]` before any sign was fixed.
    pub initial_expectation: f64,
    /// `X` of the returned signing.
    pub final_value: f64,
    /// `trace(A_s^l)` of the returned signing.
    pub trace: f64,
    /// Number of violating lifted supports (zero whenever `final_value < d^l`).
    pub violations: f64,
}

/// Fixes the edges in index order, each to the sign whose conditional
/// expectation of `X` is smaller (`+1` on ties). The result satisfies
/// `X ≤ E[X]`.
pub fn derandomize_conditional(graph: &Graph, params: &SearchParams) -> Result<Derandomized> {
    let est = Estimator::new(graph, params)?;
    let m = graph.m();
    let mut partial: Vec<Option<i8>> = vec![None; m];
    let initial = est.expected(&partial)?;
    let mut walks = est.walk_part(&partial);
    let mut violations = est.violation_part(&partial);
    for e in 0..m {
        let before: f64 = est.by_edge[e].iter().map(|&k| probability(&est.supports[k], &partial)).sum();
        let group = group_sum(&est.by_max[e], &partial) as f64;
        let mut choice: Option<(f64, i8, f64, f64)> = None;
        for sign in [1i8, -1] {
            partial[e] = Some(sign);
            let after: f64 = est.by_edge[e].iter().map(|&k| probability(&est.supports[k], &partial)).sum();
            let w = walks + f64::from(sign) * group;
            let v = violations - before + after;
            let value = w + est.penalty * v;
            if choice.is_none_or(|(best, ..)| value < best) {
                choice = Some((value, sign, w, v));
            }
        }
        let (_, sign, w, v) = choice.expect("two options");
        partial[e] = Some(sign);
        walks = w;
        violations = v;
    }
    let signing = Signing::new(partial.iter().map(|s| s.expect("all fixed")).collect())?;
    let trace = est.walk_part(&partial);
    let violations = est.violation_part(&partial);
    let final_value = trace + est.penalty * violations;
    if final_value > initial + 1e-9 * initial.abs().max(1.0) {
        return Err(Error::InternalConsistency(format!(
            "conditional expectations ended at {final_value} above the start {initial}"
        )));
    }
    Ok(Derandomized { signing, initial_expectation: initial, final_value, trace, violations })
}
