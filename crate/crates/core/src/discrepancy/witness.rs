use super::{alpha_star, dyadic_round, DiscrepancyWitness, Rounding};
use crate::error::{invalid, Error, Result};
use crate::spectral::{eigen_decompose, spectral_radius, SymMatrix, DEFAULT_TOL};

const BRUTE_SPLIT_MAX: usize = 16;
const EXTRA_LEVELS: u32 = 4;
const STARTS: usize = 8;
const RHO_FLOOR: f64 = 1e-12;

/// Finds disjoint `u, v` with large `|uᵀMv| / √(|u||v|)` from an extremal
/// eigenvector of `M` (or `eigvec` when given).
///
/// The vector is rounded to signed powers of 2; the positive and negative
/// parts of its level sets, and halves of single level sets, give the
/// candidate pairs, which are then improved by single-vertex moves. Fails
/// with a property violation if the result is below [`alpha_star`] of the
/// spectral radius.
pub fn discrepancy_witness(matrix: &SymMatrix, d: f64, eigvec: Option<&[f64]>) -> Result<DiscrepancyWitness> {
    let n = matrix.dim();
    if n < 2 {
        return Err(invalid("need at least two indices for a disjoint pair"));
    }
    if !(d > 0.0) {
        return Err(invalid(format!("row-norm bound must be positive, got {d}")));
    }
    if !matrix.has_zero_diagonal() {
        return Err(invalid("matrix must have a zero diagonal"));
    }
    let row = matrix.max_row_l1();
    if row > d * (1.0 + 1e-12) {
        return Err(invalid(format!("a row has l1 norm {row} > d = {d}")));
    }
    let (vector, rho) = match eigvec {
        Some(v) => {
            if v.len() != n {
                return Err(invalid(format!("eigenvector has length {} but the matrix has size {n}", v.len())));
            }
            (v.to_vec(), spectral_radius(matrix))
        }
        None => {
            let eig = eigen_decompose(matrix, DEFAULT_TOL)?;
            let k = eig.extremal_index();
            (eig.vectors[k].clone(), eig.report.radius)
        }
    };
    let witness = best_witness(matrix, &vector)?;
    if rho > RHO_FLOOR {
        let floor = alpha_star(rho, d)?;
        if witness.ratio < floor {
            return Err(Error::PropertyViolation(format!(
                "witness ratio {} is below {floor} guaranteed for spectral radius {rho}",
                witness.ratio
            )));
        }
    }
    Ok(witness)
}

/// The extraction behind [`discrepancy_witness`], without the guarantee check.
pub(crate) fn best_witness(matrix: &SymMatrix, vector: &[f64]) -> Result<DiscrepancyWitness> {
    let n = matrix.dim();
    let mut candidates: Vec<(f64, Vec<usize>, Vec<usize>)> = Vec::new();
    let mut push = |u: Vec<usize>, v: Vec<usize>| {
        if !u.is_empty() && !v.is_empty() {
            candidates.push((ratio(matrix, &u, &v), u, v));
        }
    };

    if vector.iter().any(|x| *x != 0.0) {
        let rounded = dyadic_round(vector, Rounding::Deterministic, matrix)?;
        let levels = rounded.level_sets();
        let top = levels[0].0;
        let depth = top + (n as f64).log2().ceil() as u32 + EXTRA_LEVELS;
        let mut parts: Vec<Vec<usize>> = Vec::new();
        let (mut all_pos, mut all_neg) = (Vec::new(), Vec::new());
        for (_, set) in levels.into_iter().filter(|(l, _)| *l <= depth) {
            let (pos, neg): (Vec<usize>, Vec<usize>) = set.into_iter().partition(|&i| rounded.signs[i] > 0);
            all_pos.extend(&pos);
            all_neg.extend(&neg);
            parts.extend([pos, neg].into_iter().filter(|p| !p.is_empty()));
        }
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                push(parts[i].clone(), parts[j].clone());
            }
        }
        for part in parts.iter().filter(|p| p.len() >= 2) {
            let (a, b) = split(matrix, part);
            push(a, b);
        }
        push(all_pos, all_neg);
    }
    // largest single entry
    let mut pair = (0, 1);
    for i in 0..n {
        for j in i + 1..n {
            if matrix.get(i, j).abs() > matrix.get(pair.0, pair.1).abs() {
                pair = (i, j);
            }
        }
    }
    push(vec![pair.0], vec![pair.1]);

    candidates.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| (&a.1, &a.2).cmp(&(&b.1, &b.2))));
    candidates.dedup_by(|a, b| a.1 == b.1 && a.2 == b.2);
    let mut best: Option<DiscrepancyWitness> = None;
    for (_, u, v) in candidates.into_iter().take(STARTS) {
        let (u, v) = improve(matrix, u, v);
        let w = DiscrepancyWitness::evaluate(matrix, u, v)?;
        let better = match &best {
            None => true,
            Some(b) => w.ratio > b.ratio || (w.ratio == b.ratio && (&w.u, &w.v) < (&b.u, &b.v)),
        };
        if better {
            best = Some(w);
        }
    }
    best.ok_or_else(|| Error::InternalConsistency("no candidate pair".into()))
}

fn ratio(matrix: &SymMatrix, u: &[usize], v: &[usize]) -> f64 {
    matrix.indicator_form(u, v).abs() / ((u.len() * v.len()) as f64).sqrt()
}

/// Best split of one level set into two halves.
fn split(matrix: &SymMatrix, part: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let k = part.len();
    let pick = |mask: u32, inside: bool| -> Vec<usize> {
        (0..k).filter(|&j| (mask >> j & 1 == 1) == inside).map(|j| part[j]).collect()
    };
    if k <= BRUTE_SPLIT_MAX {
        let mut best = (f64::NEG_INFINITY, 1u32);
        // element 0 always on the first side; the first side is never everything
        for mask in (1u32..(1u32 << k) - 1).step_by(2) {
            let mut value = 0.0;
            for a in 0..k {
                if mask >> a & 1 == 1 {
                    for b in 0..k {
                        if mask >> b & 1 == 0 {
                            value += matrix.get(part[a], part[b]);
                        }
                    }
                }
            }
            let r = value.abs() / f64::from(mask.count_ones() * (k as u32 - mask.count_ones())).sqrt();
            if r > best.0 {
                best = (r, mask);
            }
        }
        return (pick(best.1, true), pick(best.1, false));
    }
    // alternate, then move single elements across while it helps
    let mut side: Vec<bool> = (0..k).map(|j| j % 2 == 0).collect();
    let score = |side: &[bool]| {
        let a: Vec<usize> = (0..k).filter(|&j| side[j]).map(|j| part[j]).collect();
        let b: Vec<usize> = (0..k).filter(|&j| !side[j]).map(|j| part[j]).collect();
        if a.is_empty() || b.is_empty() {
            f64::NEG_INFINITY
        } else {
            ratio(matrix, &a, &b)
        }
    };
    let mut current = score(&side);
    for _ in 0..4 * k {
        let mut step = None;
        for j in 0..k {
            side[j] = !side[j];
            let s = score(&side);
            side[j] = !side[j];
            if s > current + 1e-12 * current.abs() {
                current = s;
                step = Some(j);
            }
        }
        match step {
            Some(j) => side[j] = !side[j],
            None => break,
        }
    }
    (
        (0..k).filter(|&j| side[j]).map(|j| part[j]).collect(),
        (0..k).filter(|&j| !side[j]).map(|j| part[j]).collect(),
    )
}

/// Single-vertex moves (add, drop, or swap sides) while the ratio improves.
fn improve(matrix: &SymMatrix, u: Vec<usize>, v: Vec<usize>) -> (Vec<usize>, Vec<usize>) {
    let n = matrix.dim();
    let mut side = vec![0u8; n]; // 1 = u, 2 = v
    let mut ru = vec![0.0; n];
    let mut rv = vec![0.0; n];
    for &i in &u {
        side[i] = 1;
        for (r, m) in ru.iter_mut().zip(matrix.row(i)) {
            *r += m;
        }
    }
    for &i in &v {
        side[i] = 2;
        for (r, m) in rv.iter_mut().zip(matrix.row(i)) {
            *r += m;
        }
    }
    let (mut su, mut sv) = (u.len(), v.len());
    let mut value: f64 = u.iter().map(|&i| rv[i]).sum();
    let score = |value: f64, a: usize, b: usize| value.abs() / ((a * b) as f64).sqrt();
    let mut current = score(value, su, sv);

    for _ in 0..4 * n {
        // (new side of w, value, |u|, |v|)
        let mut step: Option<(usize, u8, f64, usize, usize)> = None;
        let mut best = current * (1.0 + 1e-12);
        let mut consider = |w: usize, to: u8, val: f64, a: usize, b: usize| {
            if a > 0 && b > 0 {
                let s = score(val, a, b);
                if s > best {
                    best = s;
                    step = Some((w, to, val, a, b));
                }
            }
        };
        for w in 0..n {
            match side[w] {
                0 => {
                    consider(w, 1, value + rv[w], su + 1, sv);
                    consider(w, 2, value + ru[w], su, sv + 1);
                }
                1 => {
                    consider(w, 0, value - rv[w], su - 1, sv);
                    consider(w, 2, value - rv[w] + ru[w], su - 1, sv + 1);
                }
                _ => {
                    consider(w, 0, value - ru[w], su, sv - 1);
                    consider(w, 1, value - ru[w] + rv[w], su + 1, sv - 1);
                }
            }
        }
        let Some((w, to, val, a, b)) = step else { break };
        let row = matrix.row(w);
        match side[w] {
            1 => ru.iter_mut().zip(row).for_each(|(r, m)| *r -= m),
            2 => rv.iter_mut().zip(row).for_each(|(r, m)| *r -= m),
            _ => {}
        }
        match to {
            1 => ru.iter_mut().zip(row).for_each(|(r, m)| *r += m),
            2 => rv.iter_mut().zip(row).for_each(|(r, m)| *r += m),
            _ => {}
        }
        side[w] = to;
        value = val;
        su = a;
        sv = b;
        current = best;
    }
    (
        (0..n).filter(|&i| side[i] == 1).collect(),
        (0..n).filter(|&i| side[i] == 2).collect(),
    )
}
