//! Simple undirected graphs, edge signings, and the 2-lift.
//!
//! Vertices are the dense labels `0..n`. Edges keep the order they were
//! supplied in; a [`Signing`] is aligned with that order, and so are the
//! edge lists written by [`io`].
//!
//! # Edge counts between vertex sets
//!
//! [`Graph::edge_count_between`] sums the adjacency matrix over ordered
//! pairs `(u, v)` in `S × T`. An edge with both endpoints in `S ∩ T` is
//! therefore counted twice. This is the quadratic form `1_S · A · 1_T`,
//! which is the quantity every discrepancy bound in this crate is stated
//! for.

mod cubic;
mod families;
pub mod io;
mod lift;
mod random;
mod subsets;

pub use cubic::connected_cubic_graphs;
pub use families::{cycle, disjoint_cliques, make_complete, make_railway, petersen};
pub use lift::{covering_check, two_lift, LiftProjection};
pub use random::{random_biregular_bipartite, random_regular};
pub use subsets::{connected_subsets, ConnectedSubsets};

use std::collections::VecDeque;

use crate::error::{invalid, Result};

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    // (neighbor, edge index), sorted by neighbor
    adj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (idx, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(invalid(format!("edge ({u}, {v}) has an endpoint outside 0..{n}")));
            }
            if u == v {
                return Err(invalid(format!("self-loop at vertex {u}")));
            }
            adj[u].push((v, idx));
            adj[v].push((u, idx));
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(invalid(format!("duplicate edge ({v}, {})", w[0].0)));
            }
        }
        Ok(Graph { n, edges, adj })
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Always true: the constructor refuses loops and multi-edges.
    pub fn is_simple(&self) -> bool {
        true
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    /// Neighbors of `v` paired with the index of the connecting edge.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        self.adj[u]
            .binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|pos| self.adj[u][pos].1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Component label per vertex and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(v) {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn component_count(&self) -> usize {
        self.components().1
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.component_count() == 1
    }

    /// True if the vertices in `set` induce a connected subgraph.
    pub fn induces_connected(&self, set: &[usize]) -> bool {
        if set.is_empty() {
            return false;
        }
        let mut inside = vec![false; self.n];
        for &v in set {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![set[0]];
        seen[set[0]] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == set.len()
    }

    /// Number of ordered pairs `(u, v) ∈ S × T` with `u ~ v`.
    ///
    /// Edges inside `S ∩ T` count twice (see the module docs). Repeated
    /// vertices in `S` or `T` are ignored.
    pub fn edge_count_between(&self, s: &[usize], t: &[usize]) -> Result<usize> {
        let in_s = self.mask(s)?;
        let in_t = self.mask(t)?;
        let mut count = 0;
        for (u, &member) in in_s.iter().enumerate() {
            if member {
                count += self.neighbors(u).filter(|&w| in_t[w]).count();
            }
        }
        Ok(count)
    }

    fn mask(&self, set: &[usize]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.n];
        for &v in set {
            if v >= self.n {
                return Err(invalid(format!("vertex {v} outside 0..{}", self.n)));
            }
            mask[v] = true;
        }
        Ok(mask)
    }

    /// Dense 0/1 adjacency matrix, row-major.
    pub fn adjacency_dense(&self) -> Vec<f64> {
        let mut a = vec![0.0; self.n * self.n];
        for &(u, v) in &self.edges {
            a[u * self.n + v] = 1.0;
            a[v * self.n + u] = 1.0;
        }
        a
    }
}

/// A ±1 label per edge, aligned with the owning graph's edge order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signing {
    signs: Vec<i8>,
}

impl Signing {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if let Some(pos) = signs.iter().position(|&s| s != 1 && s != -1) {
            return Err(invalid(format!("sign {} at edge {pos} is not ±1", signs[pos])));
        }
        Ok(Signing { signs })
    }

    pub fn all_positive(m: usize) -> Self {
        Signing { signs: vec![1; m] }
    }

    pub fn all_negative(m: usize) -> Self {
        Signing { signs: vec![-1; m] }
    }

    /// Signing whose edge `e` is `-1` iff bit `e` of `mask` is set.
    pub fn from_mask(m: usize, mask: u64) -> Self {
        Signing { signs: (0..m).map(|e| if mask >> e & 1 == 1 { -1 } else { 1 }).collect() }
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn get(&self, edge: usize) -> i8 {
        self.signs[edge]
    }

    pub fn set(&mut self, edge: usize, sign: i8) {
        assert!(sign == 1 || sign == -1, "sign must be ±1");
        self.signs[edge] = sign;
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.signs
    }

    pub fn negative_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }

    pub fn negated(&self) -> Self {
        Signing { signs: self.signs.iter().map(|&s| -s).collect() }
    }

    /// Flips the sign of every edge incident to `v` (a switching).
    pub fn switched_at(&self, graph: &Graph, v: usize) -> Self {
        let mut out = self.clone();
        for &(_, e) in graph.incident(v) {
            out.signs[e] = -out.signs[e];
        }
        out
    }

    pub fn check_aligned(&self, graph: &Graph) -> Result<()> {
        if self.len() != graph.m() {
            return Err(invalid(format!(
                "signing has {} entries but the graph has {} edges",
                self.len(),
                graph.m()
            )));
        }
        Ok(())
    }
}

impl serde::Serialize for Signing {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.signs.serialize(s)
    }
}
