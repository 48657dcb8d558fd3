use crate::error::{invalid, Result};
use crate::graph::{Graph, Signing};

/// Dense real symmetric matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        SymMatrix { dim, data: vec![0.0; dim * dim] }
    }

    /// Builds from the upper triangle: `f(i, j)` is called for `i <= j`.
    pub fn from_upper(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = SymMatrix::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Builds from full rows, requiring exact symmetry.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(invalid("matrix rows must all have length equal to the row count"));
        }
        for i in 0..dim {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(invalid(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
            }
        }
        Ok(SymMatrix { dim, data: rows.concat() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Sets entries `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.dim + j] = value;
        self.data[j * self.dim + i] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.dim).map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn bilinear(&self, u: &[f64], v: &[f64]) -> f64 {
        u.iter().zip(self.matvec(v)).map(|(a, b)| a * b).sum()
    }

    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        self.bilinear(x, x)
    }

    /// `1_U · M · 1_V`, summed over `i ∈ U` (outer) and `j ∈ V` (inner).
    pub fn indicator_form(&self, u: &[usize], v: &[usize]) -> f64 {
        u.iter().map(|&i| v.iter().map(|&j| self.get(i, j)).sum::<f64>()).sum()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum()
    }

    pub fn max_row_l1(&self) -> f64 {
        (0..self.dim).map(|i| self.row(i).iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.dim).all(|i| self.get(i, i) == 0.0)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        SymMatrix { dim: self.dim, data: self.data.iter().map(|x| x * factor).collect() }
    }

    /// Copy with the diagonal set to zero. Bilinear forms on vectors with
    /// disjoint supports are unchanged.
    pub fn without_diagonal(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.dim {
            m.data[i * self.dim + i] = 0.0;
        }
        m
    }

    /// `self + c·J` where `J` is the all-ones matrix.
    pub fn shifted_by_ones(&self, c: f64) -> Self {
        SymMatrix { dim: self.dim, data: self.data.iter().map(|x| x + c).collect() }
    }

    pub(crate) fn to_nalgebra(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_row_slice(self.dim, self.dim, &self.data)
    }
}

/// Signed adjacency matrix: entry `s(x, y)` on edges, zero elsewhere.
pub fn signed_adjacency(graph: &Graph, signing: &Signing) -> Result<SymMatrix> {
    signing.check_aligned(graph)?;
    let mut m = SymMatrix::zeros(graph.n());
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        m.set(u, v, f64::from(signing.get(e)));
    }
    Ok(m)
}

/// Ordinary 0/1 adjacency matrix.
pub fn adjacency(graph: &Graph) -> SymMatrix {
    signed_adjacency(graph, &Signing::all_positive(graph.m())).expect("aligned by construction")
}
