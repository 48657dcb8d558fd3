//! Configuration-model generators.
//!
//! Stubs are paired uniformly at random; loops and repeated pairs are then
//! removed by random double-edge switches. A pairing that cannot be repaired
//! within the step budget is discarded and redrawn.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{invalid, Error, Result};

const MAX_RESTARTS: usize = 64;

/// Simple `d`-regular graph on `n` vertices, deterministic per `seed`.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if n * d % 2 != 0 {
        return Err(invalid(format!("n·d must be even (n = {n}, d = {d})")));
    }
    if n <= d {
        return Err(invalid(format!("need n > d (n = {n}, d = {d})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    for _ in 0..MAX_RESTARTS {
        stubs.shuffle(&mut rng);
        let pairs: Vec<(usize, usize)> = stubs.chunks_exact(2).map(|c| (c[0], c[1])).collect();
        if let Some(mut edges) = repair(pairs, false, &mut rng) {
            for e in edges.iter_mut() {
                *e = (e.0.min(e.1), e.0.max(e.1));
            }
            edges.sort_unstable();
            return Graph::new(n, edges);
        }
    }
    Err(Error::GenerationFailure(format!(
        "no simple {d}-regular graph on {n} vertices after {MAX_RESTARTS} pairings"
    )))
}

/// Simple bipartite graph where each of the `left` vertices has degree
/// `left_deg` and each of the `right` vertices has degree `right_deg`.
///
/// Returned pairs are `(left index, right index)`, both zero-based.
pub fn random_biregular_bipartite(
    left: usize,
    left_deg: usize,
    right: usize,
    right_deg: usize,
    seed: u64,
) -> Result<Vec<(usize, usize)>> {
    if left * left_deg != right * right_deg {
        return Err(invalid(format!(
            "degree handshake fails: {left}·{left_deg} != {right}·{right_deg}"
        )));
    }
    if left_deg > right || right_deg > left {
        return Err(invalid("bipartite degree exceeds the opposite side"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let left_stubs: Vec<usize> = (0..left).flat_map(|v| std::iter::repeat_n(v, left_deg)).collect();
    let mut right_stubs: Vec<usize> =
        (0..right).flat_map(|v| std::iter::repeat_n(left + v, right_deg)).collect();
    for _ in 0..MAX_RESTARTS {
        right_stubs.shuffle(&mut rng);
        let pairs = left_stubs.iter().copied().zip(right_stubs.iter().copied()).collect();
        if let Some(mut edges) = repair(pairs, true, &mut rng) {
            for e in edges.iter_mut() {
                *e = (e.0, e.1 - left);
            }
            edges.sort_unstable();
            return Ok(edges);
        }
    }
    Err(Error::GenerationFailure(format!(
        "no simple ({left_deg},{right_deg})-biregular graph on {left}+{right} vertices"
    )))
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Removes loops and repeated pairs by switches `(a,b),(c,e) -> (a,c),(b,e)`
/// (or `(a,e),(b,c)` when `bipartite`, which keeps sides intact).
fn repair(
    mut pairs: Vec<(usize, usize)>,
    bipartite: bool,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<(usize, usize)>> {
    if pairs.len() < 2 {
        return pairs.iter().all(|&(a, b)| a != b).then_some(pairs);
    }
    let mut counts: HashMap<(usize, usize), usize> = HashMap::with_capacity(pairs.len());
    for &(a, b) in &pairs {
        *counts.entry(key(a, b)).or_insert(0) += 1;
    }
    let is_bad = |counts: &HashMap<(usize, usize), usize>, (a, b): (usize, usize)| {
        a == b || counts[&key(a, b)] > 1
    };
    let budget = 200 * pairs.len() + 1000;
    let mut cursor = 0;
    for _ in 0..budget {
        let mut found = None;
        for k in 0..pairs.len() {
            let i = (cursor + k) % pairs.len();
            if is_bad(&counts, pairs[i]) {
                found = Some(i);
                break;
            }
        }
        let Some(i) = found else {
            return Some(pairs);
        };
        cursor = i;
        let j = rng.gen_range(0..pairs.len());
        if j == i {
            continue;
        }
        let (a, b) = pairs[i];
        let (c, e) = pairs[j];
        let (p, q) = if bipartite || rng.gen::<bool>() { ((a, e), (c, b)) } else { ((a, c), (b, e)) };
        if p.0 == p.1 || q.0 == q.1 || key(p.0, p.1) == key(q.0, q.1) {
            continue;
        }
        for old in [(a, b), (c, e)] {
            *counts.get_mut(&key(old.0, old.1)).unwrap() -= 1;
        }
        let free = |x: &(usize, usize)| counts.get(&key(x.0, x.1)).copied().unwrap_or(0) == 0;
        if !(free(&p) && free(&q)) {
            for old in [(a, b), (c, e)] {
                *counts.get_mut(&key(old.0, old.1)).unwrap() += 1;
            }
            continue;
        }
        for new in [p, q] {
            *counts.entry(key(new.0, new.1)).or_insert(0) += 1;
        }
        pairs[i] = p;
        pairs[j] = q;
    }
    None
}
