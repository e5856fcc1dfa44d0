//! Hermitian matrices over the Gaussian rationals, the canonical real
//! basis of the Hermitian space, and exact determinants.
//!
//! A Hermitian `n x n` matrix is determined by `n^2` real parameters; the
//! canonical basis fixed here identifies the space of Hermitian matrices
//! with rational coordinate vectors of length `n^2` so that kernels,
//! Gram matrices, and signatures can be computed by exact rational
//! linear algebra.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::scalar::{GaussianRational, Rational};
use crate::Result;

/// A square matrix of Gaussian rationals with no symmetry constraint.
///
/// Used for intermediate products (conjugation, characteristic-polynomial
/// recurrences) and for the exact determinant.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexMatrix {
    n: usize,
    entries: Vec<GaussianRational>,
}

impl ComplexMatrix {
    pub fn zero(n: usize) -> Self {
        ComplexMatrix {
            n,
            entries: vec![GaussianRational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ComplexMatrix::zero(n);
        for i in 0..n {
            *m.at_mut(i, i) = GaussianRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Invalid("matrix must have at least one row".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(ComplexMatrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &GaussianRational {
        &self.entries[i * self.n + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut GaussianRational {
        &mut self.entries[i * self.n + j]
    }

    pub fn conj_transpose(&self) -> Self {
        let n = self.n;
        let mut out = ComplexMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                *out.at_mut(i, j) = self.at(j, i).conj();
            }
        }
        out
    }

    pub fn mul(&self, other: &ComplexMatrix) -> Self {
        assert_eq!(self.n, other.n, "matrix product dimension mismatch");
        let n = self.n;
        let mut out = ComplexMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = GaussianRational::zero();
                for k in 0..n {
                    acc += &(self.at(i, k) * other.at(k, j));
                }
                *out.at_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn add(&self, other: &ComplexMatrix) -> Self {
        assert_eq!(self.n, other.n, "matrix sum dimension mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        ComplexMatrix {
            n: self.n,
            entries,
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        ComplexMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn trace(&self) -> GaussianRational {
        (0..self.n).map(|i| self.at(i, i).clone()).sum()
    }

    /// Exact determinant by Gaussian elimination over the field of
    /// Gaussian rationals. Pivots are chosen as the first nonzero entry
    /// of each column, so the computation is deterministic.
    pub fn det(&self) -> GaussianRational {
        let n = self.n;
        let mut m = self.clone();
        let mut sign_flip = false;
        let mut det = GaussianRational::one();
        for col in 0..n {
            let pivot_row = match (col..n).find(|&r| !m.at(r, col).is_zero()) {
                Some(r) => r,
                None => return GaussianRational::zero(),
            };
            if pivot_row != col {
                for j in 0..n {
                    let a = m.at(pivot_row, j).clone();
                    let b = m.at(col, j).clone();
                    *m.at_mut(pivot_row, j) = b;
                    *m.at_mut(col, j) = a;
                }
                sign_flip = !sign_flip;
            }
            let pivot = m.at(col, col).clone();
            det = &det * &pivot;
            for r in col + 1..n {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col) / &pivot;
                for j in col..n {
                    let delta = &factor * m.at(col, j);
                    let cur = m.at(r, j).clone();
                    *m.at_mut(r, j) = &cur - &delta;
                }
            }
        }
        if sign_flip {
            -det
        } else {
            det
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A validated Hermitian matrix: `entries[j][i] == conj(entries[i][j])`,
/// which in particular forces a real diagonal.
///
/// The wire format is `{"n": n, "entries": [[...], ...]}` with the full
/// `n x n` entry grid; deserialization re-validates the Hermitian
/// invariant and rejects violations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HermitianMatrix {
    n: usize,
    entries: Vec<GaussianRational>,
}

impl HermitianMatrix {
    /// Validates and builds a Hermitian matrix from a full entry grid.
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Invalid("matrix must have at least one row".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for j in 0..=i {
                if rows[j][i] != rows[i][j].conj() {
                    let detail = if i == j {
                        format!("diagonal entry ({i},{i}) has nonzero imaginary part")
                    } else {
                        format!("entry ({j},{i}) is not the conjugate of entry ({i},{j})")
                    };
                    return Err(Error::NotHermitian(detail));
                }
            }
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            entries.extend(row);
        }
        Ok(HermitianMatrix { n, entries })
    }

    /// Internal constructor for entry grids already known to be Hermitian
    /// (sums, scalings, and basis elements preserve the invariant).
    fn from_parts(n: usize, entries: Vec<GaussianRational>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        HermitianMatrix { n, entries }
    }

    pub fn zero(n: usize) -> Self {
        assert!(n >= 1);
        HermitianMatrix::from_parts(n, vec![GaussianRational::zero(); n * n])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = HermitianMatrix::zero(n);
        for i in 0..n {
            m.set(i, i, GaussianRational::one());
        }
        m
    }

    /// Diagonal matrix with the given real diagonal.
    pub fn diag(values: &[Rational]) -> Self {
        let mut m = HermitianMatrix::zero(values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, GaussianRational::from_rational(v.clone()));
        }
        m
    }

    /// Converts a general square matrix, validating the Hermitian
    /// invariant.
    pub fn from_complex(m: &ComplexMatrix) -> Result<Self> {
        let n = m.n();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| m.at(i, j).clone()).collect())
            .collect();
        HermitianMatrix::from_rows(rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &GaussianRational {
        &self.entries[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: GaussianRational) {
        self.entries[i * self.n + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn as_complex(&self) -> ComplexMatrix {
        ComplexMatrix {
            n: self.n,
            entries: self.entries.clone(),
        }
    }

    /// Scales by a real scalar; Hermitian symmetry is preserved.
    pub fn scale(&self, c: &Rational) -> Self {
        HermitianMatrix::from_parts(self.n, self.entries.iter().map(|e| e.scale(c)).collect())
    }

    /// Exact determinant; real for Hermitian input.
    pub fn det(&self) -> GaussianRational {
        self.as_complex().det()
    }
}

impl Add<&HermitianMatrix> for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn add(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        assert_eq!(self.n, rhs.n, "matrix sum dimension mismatch");
        HermitianMatrix::from_parts(
            self.n,
            self.entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub<&HermitianMatrix> for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn sub(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        assert_eq!(self.n, rhs.n, "matrix difference dimension mismatch");
        HermitianMatrix::from_parts(
            self.n,
            self.entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &HermitianMatrix {
    type Output = HermitianMatrix;
    fn neg(self) -> HermitianMatrix {
        HermitianMatrix::from_parts(self.n, self.entries.iter().map(|e| -e).collect())
    }
}

impl fmt::Debug for HermitianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct HermitianWire {
    n: usize,
    entries: Vec<Vec<GaussianRational>>,
}

impl Serialize for HermitianMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let wire = HermitianWire {
            n: self.n,
            entries: (0..self.n)
                .map(|i| (0..self.n).map(|j| self.entry(i, j).clone()).collect())
                .collect(),
        };
        wire.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HermitianMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = HermitianWire::deserialize(deserializer)?;
        if wire.entries.len() != wire.n {
            return Err(D::Error::custom(format!(
                "matrix declares n = {} but has {} rows",
                wire.n,
                wire.entries.len()
            )));
        }
        HermitianMatrix::from_rows(wire.entries).map_err(|e| D::Error::custom(format!("{e}")))
    }
}

/// The canonical ordered basis of the real vector space of `n x n`
/// Hermitian matrices, `n^2` elements long.
///
/// Ordering: the diagonal units `E_kk` for `k = 0..n`, then for each
/// index pair `i < j` in lexicographic order the symmetric unit
/// `S_ij = E_ij + E_ji` followed by the antisymmetric unit `K_ij`, where
/// `K_ij` carries `-sqrt(-1)` at `(i,j)` and `+sqrt(-1)` at `(j,i)`.
///
/// With this sign convention the coordinates of a Hermitian matrix `A`
/// are `A_kk` on the diagonal units, `Re A_ij` on `S_ij`, and
/// `-Im A_ij` on `K_ij`; both the ordering and the signs are fixed so
/// that serialized coordinate vectors are stable across runs.
#[derive(Clone)]
pub struct HermitianBasis {
    n: usize,
    elements: Vec<HermitianMatrix>,
}

impl HermitianBasis {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut elements = Vec::with_capacity(n * n);
        for k in 0..n {
            let mut e = HermitianMatrix::zero(n);
            e.set(k, k, GaussianRational::one());
            elements.push(e);
        }
        for i in 0..n {
            for j in i + 1..n {
                let mut s = HermitianMatrix::zero(n);
                s.set(i, j, GaussianRational::one());
                s.set(j, i, GaussianRational::one());
                elements.push(s);

                let mut k_elt = HermitianMatrix::zero(n);
                k_elt.set(i, j, -GaussianRational::i());
                k_elt.set(j, i, GaussianRational::i());
                elements.push(k_elt);
            }
        }
        HermitianBasis { n, elements }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn element(&self, k: usize) -> &HermitianMatrix {
        &self.elements[k]
    }

    pub fn elements(&self) -> &[HermitianMatrix] {
        &self.elements
    }

    /// Exact coordinates of `a` in this basis.
    pub fn decompose(&self, a: &HermitianMatrix) -> Result<Vec<Rational>> {
        if a.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: a.n(),
            });
        }
        let mut coords = Vec::with_capacity(self.n * self.n);
        for k in 0..self.n {
            coords.push(a.entry(k, k).re.clone());
        }
        for i in 0..self.n {
            for j in i + 1..self.n {
                coords.push(a.entry(i, j).re.clone());
                coords.push(-&a.entry(i, j).im);
            }
        }
        Ok(coords)
    }

    /// Rebuilds the Hermitian matrix with the given coordinates; the exact
    /// inverse of [`HermitianBasis::decompose`].
    pub fn recompose(&self, coords: &[Rational]) -> Result<HermitianMatrix> {
        if coords.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: coords.len(),
            });
        }
        let n = self.n;
        let mut m = HermitianMatrix::zero(n);
        for k in 0..n {
            m.set(k, k, GaussianRational::from_rational(coords[k].clone()));
        }
        let mut idx = n;
        for i in 0..n {
            for j in i + 1..n {
                let s = &coords[idx];
                let kappa = &coords[idx + 1];
                idx += 2;
                let upper = GaussianRational::new(s.clone(), -kappa);
                m.set(j, i, upper.conj());
                m.set(i, j, upper);
            }
        }
        Ok(m)
    }
}
