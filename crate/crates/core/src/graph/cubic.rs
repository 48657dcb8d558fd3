//! Exhaustive lists of connected cubic graphs on few vertices.
//!
//! Generation runs over cubic pseudographs (loops and parallel edges
//! allowed), because some simple graphs only reduce to non-simple ones.
//! A graph on `k + 2` vertices comes from one on `k` vertices by edge
//! insertion: subdivide two edges (or one edge twice) and join the two new
//! vertices. Every connected pseudograph on at least four vertices reduces
//! this way except the claw with a loop on each leaf, which is seeded
//! directly together with the two pseudographs on two vertices. Disconnected
//! ones are disjoint unions. Isomorphic copies are removed at every order
//! and the simple connected ones are returned at the end.

use super::Graph;
use crate::error::{invalid, Result};

const MAX_ORDER: usize = 12;

/// All connected simple cubic graphs on `n` vertices, one per
/// isomorphism class. `n` must be even and at most 12.
pub fn connected_cubic_graphs(n: usize) -> Result<Vec<Graph>> {
    if n < 4 || n % 2 != 0 || n > MAX_ORDER {
        return Err(invalid(format!("cubic graph order must be even and in 4..={MAX_ORDER}, got {n}")));
    }
    let levels = all_cubic_up_to(n);
    Ok(levels[n].iter().filter_map(Multi::to_simple).filter(Graph::is_connected).collect())
}

/// Loopless-or-not multigraph; a loop is the pair `(v, v)` and adds 2 to the degree.
#[derive(Clone, Debug)]
struct Multi {
    n: usize,
    edges: Vec<(usize, usize)>,
    // mult[u * n + v]: edges between u and v, loops counted twice on the diagonal
    mult: Vec<u8>,
}

impl Multi {
    fn new(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut mult = vec![0u8; n * n];
        for &(u, v) in &edges {
            if u == v {
                mult[u * n + u] += 2;
            } else {
                mult[u * n + v] += 1;
                mult[v * n + u] += 1;
            }
        }
        Multi { n, edges, mult }
    }

    fn at(&self, u: usize, v: usize) -> u8 {
        self.mult[u * self.n + v]
    }

    fn is_connected(&self) -> bool {
        self.component_sizes().len() == 1
    }

    fn component_sizes(&self) -> Vec<u64> {
        let mut label = vec![usize::MAX; self.n];
        let mut sizes = Vec::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            let c = sizes.len();
            label[s] = c;
            let mut stack = vec![s];
            let mut size = 0;
            while let Some(v) = stack.pop() {
                size += 1;
                for w in 0..self.n {
                    if self.at(v, w) > 0 && label[w] == usize::MAX {
                        label[w] = c;
                        stack.push(w);
                    }
                }
            }
            sizes.push(size);
        }
        sizes.sort_unstable();
        sizes
    }

    fn to_simple(&self) -> Option<Graph> {
        let simple = (0..self.n).all(|u| self.at(u, u) == 0 && (0..self.n).all(|v| self.at(u, v) <= 1));
        simple.then(|| Graph::new(self.n, self.edges.clone()).expect("checked simple"))
    }
}

/// `levels[k]` holds every cubic pseudograph on `k` vertices (up to isomorphism).
fn all_cubic_up_to(n: usize) -> Vec<Vec<Multi>> {
    let mut levels: Vec<Vec<Multi>> = vec![Vec::new(); n + 1];
    levels[2] = vec![
        Multi::new(2, vec![(0, 1), (0, 1), (0, 1)]),
        Multi::new(2, vec![(0, 0), (0, 1), (1, 1)]),
    ];
    let mut k = 4;
    while k <= n {
        let mut found: Vec<(Vec<u64>, Multi)> = Vec::new();
        let push = |g: Multi, found: &mut Vec<(Vec<u64>, Multi)>| {
            let inv = invariant(&g);
            if !found.iter().any(|(i, h)| *i == inv && isomorphic(h, &g)) {
                found.push((inv, g));
            }
        };
        if k == 4 {
            push(Multi::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 1), (2, 2), (3, 3)]), &mut found);
        }
        for g in &levels[k - 2] {
            let m = g.edges.len();
            for a in 0..m {
                for b in a..m {
                    push(insert_edge(g, a, b), &mut found);
                }
            }
        }
        // disconnected graphs: a connected piece on j vertices plus anything on k - j
        for j in (2..=k - 2).step_by(2) {
            for small in levels[j].iter().filter(|g| g.is_connected()) {
                for rest in &levels[k - j] {
                    push(disjoint_union(small, rest), &mut found);
                }
            }
        }
        levels[k] = found.into_iter().map(|(_, g)| g).collect();
        k += 2;
    }
    levels
}

fn insert_edge(g: &Multi, ea: usize, eb: usize) -> Multi {
    let n = g.n;
    let (x, y) = (n, n + 1);
    let mut edges = Vec::with_capacity(g.edges.len() + 3);
    for (idx, &(u, v)) in g.edges.iter().enumerate() {
        if idx == ea && idx == eb {
            edges.extend([(u, x), (x, y), (y, v)]);
        } else if idx == ea {
            edges.extend([(u, x), (x, v)]);
        } else if idx == eb {
            edges.extend([(u, y), (y, v)]);
        } else {
            edges.push((u, v));
        }
    }
    edges.push((x, y));
    Multi::new(n + 2, edges)
}

fn disjoint_union(a: &Multi, b: &Multi) -> Multi {
    let shift = a.n;
    let edges = a.edges.iter().copied().chain(b.edges.iter().map(|&(u, v)| (u + shift, v + shift))).collect();
    Multi::new(a.n + b.n, edges)
}

/// Sorted per-vertex closed-walk counts of lengths 3..=6 plus component sizes.
fn invariant(g: &Multi) -> Vec<u64> {
    let n = g.n;
    let mut per_vertex: Vec<[u64; 5]> = Vec::with_capacity(n);
    for s in 0..n {
        let mut walk = vec![0u64; n];
        walk[s] = 1;
        let mut closed = [0u64; 5];
        closed[0] = u64::from(g.at(s, s));
        for len in 1..=6 {
            let mut next = vec![0u64; n];
            for v in 0..n {
                if walk[v] != 0 {
                    for w in 0..n {
                        next[w] += walk[v] * u64::from(g.at(v, w));
                    }
                }
            }
            walk = next;
            if len >= 3 {
                closed[len - 2] = walk[s];
            }
        }
        per_vertex.push(closed);
    }
    per_vertex.sort_unstable();
    per_vertex.into_iter().flatten().chain(g.component_sizes()).collect()
}

/// Backtracking isomorphism test for small pseudographs.
fn isomorphic(a: &Multi, b: &Multi) -> bool {
    if a.n != b.n || a.edges.len() != b.edges.len() {
        return false;
    }
    let n = a.n;
    // visit a's vertices so that each (after the first of a component) has a mapped neighbor
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut i = order.len();
        order.push(s);
        while i < order.len() {
            let v = order[i];
            for w in 0..n {
                if a.at(v, w) > 0 && !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(a, b, &order, 0, &mut map, &mut used)
}

fn extend(a: &Multi, b: &Multi, order: &[usize], depth: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for cand in 0..b.n {
        if used[cand] || a.at(v, v) != b.at(cand, cand) {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| a.at(u, v) == b.at(map[u], cand));
        if !consistent {
            continue;
        }
        map[v] = cand;
        used[cand] = true;
        if extend(a, b, order, depth + 1, map, used) {
            return true;
        }
        used[cand] = false;
        map[v] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{petersen, Graph};

    fn multi(g: &Graph) -> Multi {
        Multi::new(g.n(), g.edges().to_vec())
    }

    #[test]
    fn counts_match_known_enumeration() {
        // connected cubic graphs on 4, 6, 8, 10 vertices: 1, 2, 5, 19
        let counts: Vec<usize> =
            [4, 6, 8, 10].iter().map(|&n| connected_cubic_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 19]);
    }

    #[test]
    fn twelve_vertices() {
        assert_eq!(connected_cubic_graphs(12).unwrap().len(), 85);
    }

    #[test]
    fn petersen_is_listed() {
        let graphs = connected_cubic_graphs(10).unwrap();
        let p = multi(&petersen());
        assert_eq!(graphs.iter().filter(|g| isomorphic(&multi(g), &p)).count(), 1);
        assert!(graphs.iter().all(|g| g.regular_degree() == Some(3) && g.is_connected()));
    }

    #[test]
    fn isomorphism_sees_relabelling() {
        let p = petersen();
        let perm = [3, 7, 1, 9, 0, 5, 2, 8, 6, 4];
        let q = Graph::new(10, p.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect()).unwrap();
        assert!(isomorphic(&multi(&p), &multi(&q)));
        let six = connected_cubic_graphs(6).unwrap();
        assert!(!isomorphic(&multi(&six[0]), &multi(&six[1])));
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(connected_cubic_graphs(5).is_err());
        assert!(connected_cubic_graphs(14).is_err());
    }
}
