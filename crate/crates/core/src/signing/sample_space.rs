//! A small-bias sample space of bit strings indexed by pairs of elements
//! of `GF(2^s)`.
//!
//! Point `(x, y)` gives the string whose bit `i` is the inner product of
//! `x^i` and `y` as bit vectors. A parity over a nonempty position set `I`
//! is then `⟨p_I(x), y⟩` with `p_I(z) = Σ_{i∈I} z^i`, which is balanced over
//! `y` unless `x` is one of the at most `m − 1` roots of `p_I`. Every
//! parity therefore has bias at most `(m − 1)/2^s`.

use serde::Serialize;

use super::{is_good_signing, walks::Estimator, GoodnessReport, SearchParams};
use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, Signing};
use crate::spectral::{signed_adjacency, spectral_radius};

const MAX_FIELD_LOG: u32 = 31;
const MAX_POINTS_LOG: u32 = 22;

/// Bit strings of length `m` indexed by `(x, y) ∈ GF(2^s)²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleSpace {
    m: usize,
    s: u32,
    /// Irreducible polynomial of degree `s` defining the field, as a bit mask.
    modulus: u64,
}

/// The sample space for `m` bits over `GF(2^s)`; needs `m < 2^s`.
pub fn epsilon_biased_space(m: usize, s: u32) -> Result<SampleSpace> {
    SampleSpace::new(m, s)
}

impl SampleSpace {
    pub fn new(m: usize, s: u32) -> Result<Self> {
        if s == 0 || s > MAX_FIELD_LOG {
            return Err(invalid(format!("field size exponent must be in 1..={MAX_FIELD_LOG}, got {s}")));
        }
        if (m as u64) >= 1u64 << s {
            return Err(invalid(format!("field of size 2^{s} is too small for {m} positions")));
        }
        Ok(SampleSpace { m, s, modulus: irreducible(s) })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn field_log(&self) -> u32 {
        self.s
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of points, `4^s`.
    pub fn size(&self) -> u64 {
        1u64 << (2 * self.s)
    }

    /// `(m − 1)/2^s`.
    pub fn bias_bound(&self) -> f64 {
        self.m.saturating_sub(1) as f64 / (1u64 << self.s) as f64
    }

    fn check_point(&self, x: u64, y: u64) -> Result<()> {
        if x >> self.s != 0 || y >> self.s != 0 {
            return Err(invalid(format!("seed pair ({x}, {y}) outside GF(2^{})", self.s)));
        }
        Ok(())
    }

    /// `+1` for bit 0 and `−1` for bit 1 at `position` of point `(x, y)`.
    pub fn bit_at(&self, x: u64, y: u64, position: usize) -> Result<i8> {
        self.check_point(x, y)?;
        if position >= self.m {
            return Err(invalid(format!("position {position} outside 0..{}", self.m)));
        }
        let power = self.pow(x, position as u64);
        Ok(if (power & y).count_ones() % 2 == 0 { 1 } else { -1 })
    }

    /// The whole string of point `(x, y)` as signs.
    pub fn signs(&self, x: u64, y: u64) -> Result<Vec<i8>> {
        self.check_point(x, y)?;
        let mut power = 1u64;
        let mut out = Vec::with_capacity(self.m);
        for _ in 0..self.m {
            out.push(if (power & y).count_ones() % 2 == 0 { 1 } else { -1 });
            power = self.mul(power, x);
        }
        Ok(out)
    }

    pub fn signing(&self, x: u64, y: u64) -> Result<Signing> {
        Signing::new(self.signs(x, y)?)
    }

    /// Exact bias of the parity over `positions`: the fraction of `x` that
    /// are roots of `Σ_{i∈positions} z^i`.
    pub fn bias(&self, positions: &[usize]) -> Result<f64> {
        if positions.is_empty() || positions.iter().any(|&p| p >= self.m) {
            return Err(invalid("positions must be a nonempty subset of 0..m"));
        }
        let roots = (0..1u64 << self.s)
            .filter(|&x| positions.iter().fold(0u64, |acc, &p| acc ^ self.pow(x, p as u64)) == 0)
            .count();
        Ok(roots as f64 / (1u64 << self.s) as f64)
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        let mut r = 0u64;
        for i in 0..self.s {
            if b >> i & 1 == 1 {
                r ^= a << i;
            }
        }
        reduce(r, self.modulus, self.s)
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut r = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        r
    }
}

fn degree(p: u64) -> u32 {
    63 - p.leading_zeros()
}

fn reduce(mut r: u64, modulus: u64, s: u32) -> u64 {
    while r != 0 && degree(r) >= s {
        r ^= modulus << (degree(r) - s);
    }
    r
}

fn poly_mod(mut a: u64, b: u64) -> u64 {
    let db = degree(b);
    while a != 0 && degree(a) >= db {
        a ^= b << (degree(a) - db);
    }
    a
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        a = poly_mod(a, b);
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Smallest irreducible polynomial of degree `s` over GF(2), by Ben-Or's
/// test: `f` is irreducible iff `gcd(x^{2^i} − x, f) = 1` for `i ≤ s/2`.
fn irreducible(s: u32) -> u64 {
    let x = 0b10u64;
    'candidates: for tail in (1u64..1u64 << s).step_by(2) {
        let f = 1u64 << s | tail;
        let mut h = reduce(x, f, s);
        for _ in 0..s / 2 {
            h = square_mod(h, f, s);
            if poly_gcd(f, h ^ x) != 1 {
                continue 'candidates;
            }
        }
        return f;
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn square_mod(h: u64, f: u64, s: u32) -> u64 {
    let mut r = 0u64;
    for i in 0..s {
        if h >> i & 1 == 1 {
            r ^= h << i;
        }
    }
    reduce(r, f, s)
}

/// What [`search_sample_space`] minimises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SampleObjective {
    /// The estimator `X = trace(A_s^l) + Z`.
    Estimator,
    /// The signed spectral radius.
    Radius,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleSearch {
    pub signing: Signing,
    pub point: (u64, u64),
    pub best_value: f64,
    /// Mean of the objective over the whole space.
    pub mean_value: f64,
    pub points: u64,
    pub report: GoodnessReport,
}

/// Evaluates the objective at every point of the space and returns the
/// first point attaining the minimum (points ordered by `x`, then `y`).
pub fn search_sample_space(
    graph: &Graph,
    space: &SampleSpace,
    params: &SearchParams,
    objective: SampleObjective,
) -> Result<SampleSearch> {
    if space.m() != graph.m() {
        return Err(invalid(format!("space has {} positions but the graph has {} edges", space.m(), graph.m())));
    }
    if 2 * space.field_log() > MAX_POINTS_LOG {
        return Err(Error::SizeLimit(format!("space of 4^{} points is too large to scan", space.field_log())));
    }
    let estimator = match objective {
        SampleObjective::Estimator => Some(Estimator::new(graph, params)?),
        SampleObjective::Radius => None,
    };
    let side = 1u64 << space.field_log();
    let mut best = (f64::INFINITY, (0, 0));
    let mut total = 0.0;
    for x in 0..side {
        for y in 0..side {
            let signs = space.signs(x, y)?;
            let value = match &estimator {
                Some(est) => est.expected(&signs.iter().map(|&s| Some(s)).collect::<Vec<_>>())?,
                None => spectral_radius(&signed_adjacency(graph, &Signing::new(signs)?)?),
            };
            total += value;
            if value < best.0 {
                best = (value, (x, y));
            }
        }
    }
    let signing = space.signing(best.1 .0, best.1 .1)?;
    let report = is_good_signing(graph, &signing, params)?;
    Ok(SampleSearch {
        signing,
        point: best.1,
        best_value: best.0,
        mean_value: total / space.size() as f64,
        points: space.size(),
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducible_polynomials_for_small_degrees() {
        // x^2+x+1, x^3+x+1, x^4+x+1, x^6+x+1
        assert_eq!(irreducible(2), 0b111);
        assert_eq!(irreducible(3), 0b1011);
        assert_eq!(irreducible(4), 0b10011);
        assert_eq!(irreducible(6), 0b1000011);
    }

    #[test]
    fn multiplicative_group_is_cyclic_of_full_order() {
        let space = SampleSpace::new(3, 5).unwrap();
        // 31 is prime, so every nonzero element has order 31
        for a in 1..32 {
            assert_eq!(space.pow(a, 31), 1);
        }
    }

    #[test]
    fn bit_at_matches_materialisation() {
        let space = SampleSpace::new(12, 7).unwrap();
        for (x, y) in [(0, 0), (0, 5), (3, 9), (127, 127), (64, 1)] {
            let all = space.signs(x, y).unwrap();
            for (i, &s) in all.iter().enumerate() {
                assert_eq!(space.bit_at(x, y, i).unwrap(), s);
            }
        }
    }

    #[test]
    fn zero_seeds() {
        let space = SampleSpace::new(10, 6).unwrap();
        assert!(space.signs(5, 0).unwrap().iter().all(|&s| s == 1));
        // x = 0 leaves only the constant term x^0 = 1
        let s = space.signs(0, 1).unwrap();
        assert_eq!(s[0], -1);
        assert!(s[1..].iter().all(|&b| b == 1));
    }

    #[test]
    fn validation() {
        assert!(SampleSpace::new(64, 6).is_err());
        assert!(SampleSpace::new(10, 0).is_err());
        let space = SampleSpace::new(10, 6).unwrap();
        assert!(space.bit_at(64, 0, 0).is_err());
        assert!(space.bit_at(0, 0, 10).is_err());
    }
}
