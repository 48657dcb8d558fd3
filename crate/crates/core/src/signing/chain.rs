//! Iterated 2-lifts described by their signing sources, with an adjacency
//! oracle that never builds the large graph.
//!
//! Level `i` has `n_0·2^i` vertices. Vertex `v` of level `i` lies over
//! `v mod n_{i−1}` with fibre `v / n_{i−1}`. A sample-space level signs the
//! pair `p < q` of level `i − 1` with the bit at the pair's position in the
//! lexicographic order of all pairs, so the sign of any edge is available
//! by random access.
//!
//! # File format
//!
//! ```text
//! # comments start with '#'
//! base path/to/base.edges
//! level 9 17 301          # sample space over GF(2^9), seed pair (17, 301)
//! level explicit path/to/level1.signed
//! ```
//!
//! Paths are relative to the chain file. An explicit level names a signed
//! edge list of the previous level's graph.

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use super::SampleSpace;
use crate::error::{invalid, Error, Result};
use crate::graph::{io, two_lift, Graph, Signing};

/// Where one level's signs come from.
#[derive(Clone, Debug, PartialEq)]
pub enum LevelSource {
    Explicit(Signing),
    SampleSpace { s: u32, x: u64, y: u64 },
}

/// A chain of lifts over a base graph.
#[derive(Clone, Debug)]
pub struct LiftChain {
    base: Graph,
    levels: Vec<Level>,
}

#[derive(Clone, Debug)]
struct Level {
    source: LevelSource,
    // for explicit levels: normalised pair -> sign
    signs: HashMap<(usize, usize), i8>,
    space: Option<SampleSpace>,
}

/// Index of `p < q` among all pairs of `0..n` in lexicographic order.
pub(crate) fn pair_position(n: usize, p: usize, q: usize) -> usize {
    p * n - p * (p + 1) / 2 + (q - p - 1)
}

impl LiftChain {
    pub fn new(base: Graph) -> Self {
        LiftChain { base, levels: Vec::new() }
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn sources(&self) -> impl Iterator<Item = &LevelSource> {
        self.levels.iter().map(|l| &l.source)
    }

    /// Vertices at `level`.
    pub fn order(&self, level: usize) -> usize {
        self.base.n() << level
    }

    /// Appends a level signed by the given signing of the current top graph.
    pub fn push_explicit(&mut self, signing: Signing) -> Result<()> {
        let top = self.materialize(self.depth())?;
        signing.check_aligned(&top)?;
        let signs = top
            .edges()
            .iter()
            .enumerate()
            .map(|(e, &(u, v))| ((u.min(v), u.max(v)), signing.get(e)))
            .collect();
        self.levels.push(Level { source: LevelSource::Explicit(signing), signs, space: None });
        Ok(())
    }

    /// Appends a level signed by point `(x, y)` of the sample space over
    /// `GF(2^s)` with one position per vertex pair of the current top.
    pub fn push_sample_space(&mut self, s: u32, x: u64, y: u64) -> Result<()> {
        let n = self.order(self.depth());
        let space = SampleSpace::new(n * n.saturating_sub(1) / 2, s)?;
        if x >> s != 0 || y >> s != 0 {
            return Err(invalid(format!("seed pair ({x}, {y}) outside GF(2^{s})")));
        }
        self.levels.push(Level { source: LevelSource::SampleSpace { s, x, y }, signs: HashMap::new(), space: Some(space) });
        Ok(())
    }

    /// Sign of the level-`level` lift on the pair `p < q` of level `level − 1`
    /// (`None` for explicit levels where the pair is not an edge).
    fn sign(&self, level: usize, p: usize, q: usize) -> Option<i8> {
        let lv = &self.levels[level - 1];
        match (&lv.source, &lv.space) {
            (LevelSource::SampleSpace { x, y, .. }, Some(space)) => {
                let n = self.order(level - 1);
                Some(space.bit_at(*x, *y, pair_position(n, p, q)).expect("validated on push"))
            }
            _ => lv.signs.get(&(p, q)).copied(),
        }
    }

    /// Signing of the graph at `level − 1` that produces `level`.
    pub fn level_signing(&self, level: usize, graph: &Graph) -> Result<Signing> {
        if level == 0 || level > self.depth() {
            return Err(invalid(format!("level {level} outside 1..={}", self.depth())));
        }
        if let LevelSource::Explicit(s) = &self.levels[level - 1].source {
            return Ok(s.clone());
        }
        let signs = graph
            .edges()
            .iter()
            .map(|&(u, v)| self.sign(level, u.min(v), u.max(v)).expect("sample-space signs are total"))
            .collect();
        Signing::new(signs)
    }

    /// The graph at `level`, built by lifting level by level.
    pub fn materialize(&self, level: usize) -> Result<Graph> {
        if level > self.depth() {
            return Err(invalid(format!("level {level} beyond chain depth {}", self.depth())));
        }
        let mut g = self.base.clone();
        for i in 1..=level {
            let s = self.level_signing(i, &g)?;
            g = two_lift(&g, &s)?.0;
        }
        Ok(g)
    }

    /// Whether `i` and `j` are adjacent at `level`, using one sign lookup
    /// per level and one base adjacency test.
    pub fn oracle_adjacent(&self, level: usize, i: usize, j: usize) -> Result<bool> {
        if level > self.depth() {
            return Err(invalid(format!("level {level} beyond chain depth {}", self.depth())));
        }
        let n = self.order(level);
        if i >= n || j >= n {
            return Err(invalid(format!("vertex outside 0..{n}")));
        }
        let (mut a, mut b) = (i, j);
        for lv in (1..=level).rev() {
            let below = self.order(lv - 1);
            let (pa, pb) = (a % below, b % below);
            if pa == pb {
                return Ok(false);
            }
            let crossed = (a / below) != (b / below);
            match self.sign(lv, pa.min(pb), pa.max(pb)) {
                Some(s) if (s < 0) == crossed => {}
                _ => return Ok(false),
            }
            a = pa;
            b = pb;
        }
        Ok(self.base.has_edge(a, b))
    }
}

/// One level line of a chain file.
#[derive(Clone, Debug, PartialEq)]
pub enum ChainLevel {
    Explicit(PathBuf),
    SampleSpace { s: u32, x: u64, y: u64 },
}

/// Parsed chain file.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainSpec {
    pub base: PathBuf,
    pub levels: Vec<ChainLevel>,
}

impl ChainSpec {
    pub fn parse(reader: impl Read) -> Result<Self> {
        let mut base = None;
        let mut levels = Vec::new();
        for (idx, line) in BufReader::new(reader).lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse { line: lineno, message };
            let fields: Vec<&str> = content.split_whitespace().collect();
            match fields.as_slice() {
                ["base", path] => {
                    if base.is_some() {
                        return Err(err("second base line".into()));
                    }
                    base = Some(PathBuf::from(path));
                }
                ["level", "explicit", path] => levels.push(ChainLevel::Explicit(PathBuf::from(path))),
                ["level", s, x, y] => {
                    let num = |t: &str| t.parse::<u64>().map_err(|_| err(format!("expected an integer, got {t:?}")));
                    let s = u32::try_from(num(s)?).map_err(|_| err("field size out of range".into()))?;
                    levels.push(ChainLevel::SampleSpace { s, x: num(x)?, y: num(y)? });
                }
                _ => return Err(err(format!("unrecognised line {content:?}"))),
            }
            if base.is_none() {
                return Err(err("the first line must name the base graph".into()));
            }
        }
        let base = base.ok_or(Error::Parse { line: 0, message: "missing base line".into() })?;
        Ok(ChainSpec { base, levels })
    }

    pub fn write(&self, mut out: impl Write) -> Result<()> {
        writeln!(out, "base {}", self.base.display())?;
        for level in &self.levels {
            match level {
                ChainLevel::Explicit(p) => writeln!(out, "level explicit {}", p.display())?,
                ChainLevel::SampleSpace { s, x, y } => writeln!(out, "level {s} {x} {y}")?,
            }
        }
        Ok(())
    }
}

impl LiftChain {
    /// Loads a chain file, resolving paths against its directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let dir = path.parent().unwrap_or(Path::new("."));
        let parsed = ChainSpec::parse(std::fs::File::open(path)?)?;
        let mut chain = LiftChain::new(io::load(dir.join(&parsed.base))?.graph);
        for level in parsed.levels {
            match level {
                ChainLevel::SampleSpace { s, x, y } => chain.push_sample_space(s, x, y)?,
                ChainLevel::Explicit(p) => {
                    let file = io::load(dir.join(&p))?;
                    let signing = file.signing.ok_or_else(|| invalid(format!("{} has no sign column", p.display())))?;
                    let top = chain.materialize(chain.depth())?;
                    chain.push_explicit(align(&top, &file.graph, &signing)?)?;
                }
            }
        }
        Ok(chain)
    }
}

/// Re-indexes a signing given for `other` onto `graph`'s edge order,
/// requiring the two graphs to have the same edge set.
fn align(graph: &Graph, other: &Graph, signing: &Signing) -> Result<Signing> {
    signing.check_aligned(other)?;
    if graph.n() != other.n() || graph.m() != other.m() {
        return Err(invalid("explicit level does not match the graph it signs"));
    }
    let signs = graph
        .edges()
        .iter()
        .map(|&(u, v)| {
            other.edge_index(u, v).map(|e| signing.get(e)).ok_or_else(|| invalid(format!("edge ({u}, {v}) missing")))
        })
        .collect::<Result<Vec<i8>>>()?;
    Signing::new(signs)
}
