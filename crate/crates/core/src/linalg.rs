//! Exact rational matrices and reduced row echelon form.

use num_traits::Zero;

use crate::scalar::{qi, Q};

/// Dense matrix over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = qi(1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for ExactMatrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

/// Result of Gauss-Jordan elimination: the canonical reduced row echelon
/// form, the pivot columns, and a kernel basis with free variables in
/// column order.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub pivots: Vec<usize>,
    pub kernel: Vec<Vec<Q>>,
}

/// Canonical reduced row echelon form over Q.
pub fn rref(m: &ExactMatrix) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, c)].recip();
        for j in c..cols {
            let v = &a[(r, j)] * &inv;
            a[(r, j)] = v;
        }
        for i in 0..rows {
            if i != r && !a[(i, c)].is_zero() {
                let f = a[(i, c)].clone();
                for j in c..cols {
                    let v = &a[(i, j)] - &f * &a[(r, j)];
                    a[(i, j)] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }

    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut kernel = Vec::new();
    for free in (0..cols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![Q::zero(); cols];
        v[free] = qi(1);
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[(row, free)].clone();
        }
        kernel.push(v);
    }

    Rref {
        matrix: a,
        pivots,
        kernel,
    }
}

/// Solves `A x = b`. Returns a particular solution (free variables zero)
/// or `None` when the system is inconsistent.
pub fn solve(a: &ExactMatrix, b: &[Q]) -> Option<Vec<Q>> {
    assert_eq!(a.rows(), b.len());
    let mut aug = ExactMatrix::zeros(a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, a.cols)] = b[i].clone();
    }
    let red = rref(&aug);
    if red.pivots.contains(&a.cols) {
        return None; // a pivot in the constant column
    }
    let mut x = vec![Q::zero(); a.cols];
    for (row, &pc) in red.pivots.iter().enumerate() {
        x[pc] = red.matrix[(row, a.cols)].clone();
    }
    Some(x)
}

/// Rank via elimination.
pub fn rank(m: &ExactMatrix) -> usize {
    rref(m).pivots.len()
}

/// Inverse of a square matrix, or `None` when singular.
pub fn invert(m: &ExactMatrix) -> Option<ExactMatrix> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut aug = ExactMatrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n + i)] = qi(1);
    }
    let red = rref(&aug);
    if red.pivots.len() < n || red.pivots[n - 1] >= n {
        return None;
    }
    let mut inv = ExactMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv[(i, j)] = red.matrix[(i, n + j)].clone();
        }
    }
    Some(inv)
}
