//! Dense exact linear algebra over the rationals.
//!
//! Used as the brute-force oracle side of invariance checks: solution spaces
//! are computed by row reduction, never by the structural shortcuts the rest
//! of the crate knows about.

use crate::rat::Rat;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols));
        Self {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rat) {
        self.data[r * self.cols + c] = value;
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let Some(pivot_row) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, pivot_row);
            let inv = Rat::one() / self.at(row, col).clone();
            self.scale_row(row, &inv);
            for other in 0..self.rows {
                if other != row && !self.at(other, col).is_zero() {
                    let factor = self.at(other, col).clone();
                    self.sub_scaled_row(other, row, &factor);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, factor: &Rat) {
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            if !self.data[idx].is_zero() {
                self.data[idx] = &self.data[idx] * factor;
            }
        }
    }

    fn sub_scaled_row(&mut self, target: usize, source: usize, factor: &Rat) {
        for c in 0..self.cols {
            let s = self.data[source * self.cols + c].clone();
            if !s.is_zero() {
                let idx = target * self.cols + c;
                self.data[idx] = &self.data[idx] - &(s * factor);
            }
        }
    }
}

/// Basis of `{x : M x = 0}`, one vector per free column, in ascending column
/// order. Deterministic: the free coordinate of each basis vector is 1.
pub fn nullspace(matrix: &RatMatrix) -> Vec<Vec<Rat>> {
    let mut m = matrix.clone();
    let pivots = m.rref();
    let pivot_set: Vec<Option<usize>> = {
        let mut v = vec![None; m.cols()];
        for (row, &col) in pivots.iter().enumerate() {
            v[col] = Some(row);
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..m.cols() {
        if pivot_set[free].is_some() {
            continue;
        }
        let mut vector = vec![Rat::zero(); m.cols()];
        vector[free] = Rat::one();
        for col in 0..m.cols() {
            if let Some(row) = pivot_set[col] {
                vector[col] = -m.at(row, free).clone();
            }
        }
        basis.push(vector);
    }
    basis
}

/// Solves `M x = b` exactly; `None` when inconsistent. Free variables are 0.
pub fn solve(matrix: &RatMatrix, rhs: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(matrix.rows(), rhs.len());
    let mut augmented = RatMatrix::zero(matrix.rows(), matrix.cols() + 1);
    for r in 0..matrix.rows() {
        for c in 0..matrix.cols() {
            augmented.set(r, c, matrix.at(r, c).clone());
        }
        augmented.set(r, matrix.cols(), rhs[r].clone());
    }
    let pivots = augmented.rref();
    if pivots.contains(&matrix.cols()) {
        return None;
    }
    let mut x = vec![Rat::zero(); matrix.cols()];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = augmented.at(row, matrix.cols()).clone();
    }
    Some(x)
}

/// Rank of the matrix.
pub fn rank(matrix: &RatMatrix) -> usize {
    matrix.clone().rref().len()
}

/// True when `vector` lies in the span of `generators`.
pub fn in_span(generators: &[Vec<Rat>], vector: &[Rat]) -> bool {
    if generators.is_empty() {
        return vector.iter().all(Rat::is_zero);
    }
    let dim = vector.len();
    assert!(generators.iter().all(|g| g.len() == dim));
    let mut m = RatMatrix::zero(dim, generators.len());
    for (j, g) in generators.iter().enumerate() {
        for (i, value) in g.iter().enumerate() {
            m.set(i, j, value.clone());
        }
    }
    solve(&m, vector).is_some()
}
