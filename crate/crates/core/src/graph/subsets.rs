use super::Graph;

/// Every vertex set of size at most `max_size` that induces a connected
/// subgraph, each exactly once.
///
/// Sets are grown from their minimum vertex, only ever adding vertices
/// larger than that root that are exclusive neighbors of the newest vertex
/// (the ESU scheme), so no set is produced twice. Emitted sets are in
/// insertion order, not sorted.
pub fn connected_subsets(graph: &Graph, max_size: usize) -> ConnectedSubsets<'_> {
    let mut stack = Vec::new();
    if max_size > 0 {
        for root in (0..graph.n()).rev() {
            let ext = graph.neighbors(root).filter(|&w| w > root).collect();
            stack.push(Frame { subset: vec![root], ext });
        }
    }
    ConnectedSubsets { graph, max_size, stack, marks: vec![0; graph.n()] }
}

struct Frame {
    subset: Vec<usize>,
    ext: Vec<usize>,
}

pub struct ConnectedSubsets<'g> {
    graph: &'g Graph,
    max_size: usize,
    stack: Vec<Frame>,
    // scratch: 1 = in subset, 2 = neighbor of subset
    marks: Vec<u8>,
}

impl Iterator for ConnectedSubsets<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let Frame { subset, ext } = self.stack.pop()?;
        if subset.len() < self.max_size && !ext.is_empty() {
            let root = subset[0];
            for &v in &subset {
                self.marks[v] = 1;
            }
            for &v in &subset {
                for w in self.graph.neighbors(v) {
                    if self.marks[w] == 0 {
                        self.marks[w] = 2;
                    }
                }
            }
            // children are pushed in reverse so the first extension is explored first
            let mut children = Vec::with_capacity(ext.len());
            for (k, &w) in ext.iter().enumerate() {
                let mut next_ext: Vec<usize> = ext[k + 1..].to_vec();
                next_ext.extend(self.graph.neighbors(w).filter(|&u| u > root && self.marks[u] == 0));
                let mut next_subset = subset.clone();
                next_subset.push(w);
                children.push(Frame { subset: next_subset, ext: next_ext });
            }
            for &v in &subset {
                self.marks[v] = 0;
                for w in self.graph.neighbors(v) {
                    self.marks[w] = 0;
                }
            }
            self.stack.extend(children.into_iter().rev());
        }
        Some(subset)
    }
}
