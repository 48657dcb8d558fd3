use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::spectral::SymMatrix;

/// How [`dyadic_round`] picks between the two neighbouring powers of 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    /// Conditional expectations: never lets `x'ᵀMx'` move away from `xᵀMx`'s side.
    Deterministic,
    /// Rounds `(1+δ)2^t` up with probability `δ`.
    Random { seed: u64 },
}

/// A vector whose nonzero entries are `±2^{-level}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DyadicVector {
    /// −1, 0 or +1 per index.
    pub signs: Vec<i8>,
    /// Entry `i` is `signs[i]·2^{-levels[i]}`; 0 where the sign is 0.
    pub levels: Vec<u32>,
    /// Factor applied to the input before rounding.
    pub scale: f64,
}

impl DyadicVector {
    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn value(&self, i: usize) -> f64 {
        f64::from(self.signs[i]) * 2f64.powi(-(self.levels[i] as i32))
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.value(i)).collect()
    }

    pub fn norm_sq(&self) -> f64 {
        self.values().iter().map(|x| x * x).sum()
    }

    /// `(level, indices)` for every occupied level, largest entries first.
    pub fn level_sets(&self) -> Vec<(u32, Vec<usize>)> {
        let mut sets: std::collections::BTreeMap<u32, Vec<usize>> = Default::default();
        for i in 0..self.len() {
            if self.signs[i] != 0 {
                sets.entry(self.levels[i]).or_default().push(i);
            }
        }
        sets.into_iter().collect()
    }
}

/// Rounds every entry of `x` to a signed power of 2 after rescaling so that
/// the result has `‖·‖∞ < 1/2`.
///
/// An entry `±(1+δ)2^t` becomes `±2^{t+1}` or `±2^t`; choosing up with
/// probability `δ` keeps each entry's mean, so with a zero diagonal
/// `E[x'ᵀMx'] = xᵀMx` and the deterministic mode can fix one coordinate at
/// a time without losing ground. It prefers rounding down whenever that is
/// safe and tries a few global scales, keeping the first whose norm grows
/// by at most 2 (or the smallest growth otherwise). In deterministic mode
/// `|x'ᵀMx'| ≥ scale²·|xᵀMx|`.
pub fn dyadic_round(x: &[f64], mode: Rounding, matrix: &SymMatrix) -> Result<DyadicVector> {
    if x.len() != matrix.dim() {
        return Err(invalid(format!("vector has length {} but the matrix has size {}", x.len(), matrix.dim())));
    }
    if !matrix.has_zero_diagonal() {
        return Err(invalid("matrix must have a zero diagonal"));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(invalid("vector entries must be finite"));
    }
    let top = x.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if top == 0.0 {
        return Err(invalid("cannot round the zero vector"));
    }
    // power of 2 bringing the largest entry into [1/16, 1/8)
    let mut base = 2f64.powi((-4.0 - top.log2()).ceil() as i32);
    while top * base >= 0.125 {
        base *= 0.5;
    }
    while top * base < 0.0625 {
        base *= 2.0;
    }
    match mode {
        Rounding::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let values: Vec<f64> = x
                .iter()
                .map(|&v| {
                    let (low, high) = neighbours(v * base);
                    let delta = (v * base).abs() / low.abs() - 1.0;
                    if rng.gen::<f64>() < delta {
                        high
                    } else {
                        low
                    }
                })
                .collect();
            Ok(encode(&values, base))
        }
        Rounding::Deterministic => {
            let norm = x.iter().map(|v| v * v).sum::<f64>();
            let mut best: Option<(f64, DyadicVector)> = None;
            for j in 0..4 {
                let scale = base * 2f64.powf(j as f64 / 4.0);
                let values = conditional_round(x, scale, matrix);
                let growth = values.iter().map(|v| v * v).sum::<f64>() / (scale * scale * norm);
                if growth <= 2.0 {
                    return Ok(encode(&values, scale));
                }
                if best.as_ref().is_none_or(|(g, _)| growth < *g) {
                    best = Some((growth, encode(&values, scale)));
                }
            }
            Ok(best.expect("four scales tried").1)
        }
    }
}

/// `(sign·2^t, sign·2^{t+1})` with `2^t ≤ |v| < 2^{t+1}`; zeros stay zero.
fn neighbours(v: f64) -> (f64, f64) {
    if v == 0.0 {
        return (0.0, 0.0);
    }
    let a = v.abs();
    let mut low = 2f64.powi(a.log2().floor() as i32);
    if low > a {
        low *= 0.5;
    }
    if 2.0 * low <= a {
        low *= 2.0;
    }
    (low.copysign(v), (2.0 * low).copysign(v))
}

fn conditional_round(x: &[f64], scale: f64, matrix: &SymMatrix) -> Vec<f64> {
    let mut y: Vec<f64> = x.iter().map(|v| v * scale).collect();
    let mut grad = matrix.matvec(&y);
    let target: f64 = y.iter().zip(&grad).map(|(a, b)| a * b).sum();
    let keeps = |q: f64| if target >= 0.0 { q >= target } else { q <= target };
    let mut q = target;
    for i in 0..y.len() {
        if y[i] == 0.0 {
            continue;
        }
        let (low, high) = neighbours(y[i]);
        let q_low = q + 2.0 * (low - y[i]) * grad[i];
        let q_high = q + 2.0 * (high - y[i]) * grad[i];
        let (v, nq) = if keeps(q_low) {
            (low, q_low)
        } else if keeps(q_high) || (target >= 0.0) == (q_high > q_low) {
            (high, q_high)
        } else {
            (low, q_low)
        };
        let delta = v - y[i];
        for (g, m) in grad.iter_mut().zip(matrix.row(i)) {
            *g += m * delta;
        }
        y[i] = v;
        q = nq;
    }
    y
}

fn encode(values: &[f64], scale: f64) -> DyadicVector {
    let signs = values.iter().map(|&v| if v > 0.0 { 1 } else if v < 0.0 { -1 } else { 0 }).collect();
    let levels = values.iter().map(|&v| if v == 0.0 { 0 } else { (-v.abs().log2()).round() as u32 }).collect();
    DyadicVector { signs, levels, scale }
}
