//! Exact rational linear algebra: row reduction, ranks, kernels, and
//! symmetric congruence diagonalization.
//!
//! Congruence diagonalization is the workhorse that replaces eigenvalue
//! computations everywhere in this crate: by Sylvester's law of inertia
//! the counts of positive, zero, and negative diagonal entries of
//! `T^t A T` are an invariant of the symmetric matrix `A`, and they are
//! computed here without ever leaving the rationals.

use crate::scalar::Rational;

/// A dense matrix of rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        RatMatrix { rows: r, cols: c, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Rational>]) -> Self {
        let c = columns.len();
        let r = columns.first().map_or(0, |col| col.len());
        let mut m = RatMatrix::zeros(r, c);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, v) in col.iter().enumerate() {
                *m.at_mut(i, j) = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &RatMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.at(i, k).is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let delta = self.at(i, k) * other.at(k, j);
                    *out.at_mut(i, j) += &delta;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    /// In-place reduced row echelon form. Pivots are the first nonzero
    /// entry scanning each column top to bottom, so the result is
    /// deterministic. Returns the pivot column indices.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let pivot_row = match (row..self.rows).find(|&r| !self.at(r, col).is_zero()) {
                Some(r) => r,
                None => continue,
            };
            self.swap_rows(row, pivot_row);
            let inv = self.at(row, col).recip();
            for j in col..self.cols {
                let v = self.at(row, j) * &inv;
                *self.at_mut(row, j) = v;
            }
            for r in 0..self.rows {
                if r == row || self.at(r, col).is_zero() {
                    continue;
                }
                let factor = self.at(r, col).clone();
                for j in col..self.cols {
                    let delta = &factor * self.at(row, j);
                    *self.at_mut(r, j) -= &delta;
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
        for j in 0..self.cols {
            self.data
                .swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// A deterministic basis of the right kernel, one vector per free
    /// column of the reduced row echelon form, in increasing column
    /// order.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let mut reduced = self.clone();
        let pivots = reduced.rref_in_place();
        let pivot_set: std::collections::BTreeMap<usize, usize> = pivots
            .iter()
            .enumerate()
            .map(|(row, &col)| (col, row))
            .collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains_key(&free) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (&col, &row) in &pivot_set {
                v[col] = -reduced.at(row, free);
            }
            basis.push(v);
        }
        basis
    }
}

impl std::fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Result of diagonalizing a symmetric matrix by congruence:
/// `transform^t * a * transform` is diagonal with the entries in `diag`.
pub struct CongruenceDiagonalization {
    pub diag: Vec<Rational>,
    pub transform: RatMatrix,
}

/// Diagonalizes a symmetric rational matrix by a congruence transform.
///
/// Pivot policy, fixed for determinism: at each step take the first
/// nonzero diagonal entry in index order; if the remaining diagonal is
/// all zero, find the first nonzero off-diagonal entry `(i, j)` with
/// `i < j` in lexicographic order and add row/column `j` into row/column
/// `i`, which creates a nonzero diagonal entry (`2 a_ij`).
pub fn congruence_diagonalize(a: &RatMatrix) -> CongruenceDiagonalization {
    let d = a.rows();
    assert_eq!(d, a.cols(), "congruence input must be square");
    debug_assert!({
        let mut sym = true;
        for i in 0..d {
            for j in i + 1..d {
                sym &= a.at(i, j) == a.at(j, i);
            }
        }
        sym
    });
    let mut m = a.clone();
    let mut t = RatMatrix::identity(d);
    let mut k = 0;
    while k < d {
        if m.at(k, k).is_zero() {
            if let Some(j) = (k + 1..d).find(|&j| !m.at(j, j).is_zero()) {
                swap_congruence(&mut m, &mut t, k, j);
            } else if let Some((i, j)) = first_nonzero_off_diagonal(&m, k) {
                add_congruence(&mut m, &mut t, i, j);
                if i != k {
                    swap_congruence(&mut m, &mut t, k, i);
                }
            } else {
                // The whole remaining block vanishes.
                break;
            }
        }
        let pivot = m.at(k, k).clone();
        for r in k + 1..d {
            if m.at(r, k).is_zero() {
                continue;
            }
            let factor = m.at(r, k) / &pivot;
            eliminate_congruence(&mut m, &mut t, k, r, &factor);
        }
        k += 1;
    }
    let diag = (0..d).map(|i| m.at(i, i).clone()).collect();
    CongruenceDiagonalization { diag, transform: t }
}

fn first_nonzero_off_diagonal(m: &RatMatrix, from: usize) -> Option<(usize, usize)> {
    let d = m.rows();
    for i in from..d {
        for j in i + 1..d {
            if !m.at(i, j).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Congruence by the permutation swapping `a` and `b`.
fn swap_congruence(m: &mut RatMatrix, t: &mut RatMatrix, a: usize, b: usize) {
    let d = m.rows();
    for j in 0..d {
        m.data.swap(a * d + j, b * d + j);
    }
    for i in 0..d {
        m.data.swap(i * d + a, i * d + b);
    }
    for i in 0..t.rows() {
        let x = t.at(i, a).clone();
        let y = t.at(i, b).clone();
        *t.at_mut(i, a) = y;
        *t.at_mut(i, b) = x;
    }
}

/// Congruence by `E = I + e_j e_i^t`: adds row/column `j` into
/// row/column `i`.
fn add_congruence(m: &mut RatMatrix, t: &mut RatMatrix, i: usize, j: usize) {
    let d = m.rows();
    for c in 0..d {
        let delta = m.at(j, c).clone();
        *m.at_mut(i, c) += &delta;
    }
    for r in 0..d {
        let delta = m.at(r, j).clone();
        *m.at_mut(r, i) += &delta;
    }
    for r in 0..t.rows() {
        let delta = t.at(r, j).clone();
        *t.at_mut(r, i) += &delta;
    }
}

/// Congruence by `E = I - f e_k e_r^t`: subtracts `f` times row/column
/// `k` from row/column `r`, clearing the `(r, k)` and `(k, r)` entries.
fn eliminate_congruence(m: &mut RatMatrix, t: &mut RatMatrix, k: usize, r: usize, f: &Rational) {
    let d = m.rows();
    for c in 0..d {
        let delta = f * m.at(k, c);
        *m.at_mut(r, c) -= &delta;
    }
    for row in 0..d {
        let delta = f * m.at(row, k);
        *m.at_mut(row, r) -= &delta;
    }
    for row in 0..t.rows() {
        let delta = f * t.at(row, k);
        *t.at_mut(row, r) -= &delta;
    }
}
