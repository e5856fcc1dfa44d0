//! The mixed discriminant of an `n`-tuple of `n x n` Hermitian matrices.
//!
//! `mixed_disc` carries the normalization with no `1/n!` factor: it is
//! the full polarization of the determinant, so
//!
//! ```text
//! D(A, ..., A) = n! * det(A)        D(I, ..., I) = n!
//! ```
//!
//! Two independent evaluation routes are kept deliberately:
//!
//! - [`mixed_disc`] uses the inclusion-exclusion polarization identity
//!   over subset sums (`2^n` determinants), and is the production path.
//! - [`mixed_disc_oracle`] evaluates the double permutation sum
//!   directly (`(n!)^2` products) and exists to cross-check the first
//!   route; it shares no code with it beyond scalar arithmetic.
//!
//! Results are rational because the determinant of a Hermitian matrix is
//! real; this is asserted, not assumed, at every evaluation.

use itertools::Itertools;

use crate::error::Error;
use crate::matrix::HermitianMatrix;
use crate::scalar::{GaussianRational, Rational};
use crate::Result;

/// Largest dimension the permutation-sum oracle accepts by default; the
/// double sum costs `(n!)^2` products.
pub const DEFAULT_ORACLE_CAP: usize = 5;

/// An ordered tuple of exactly `n` Hermitian matrices of dimension `n`.
#[derive(Clone, PartialEq, Eq, serde::Serialize)]
pub struct MatrixTuple {
    n: usize,
    matrices: Vec<HermitianMatrix>,
}

impl<'de> serde::Deserialize<'de> for MatrixTuple {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Wire {
            n: usize,
            matrices: Vec<HermitianMatrix>,
        }
        let wire = Wire::deserialize(deserializer)?;
        MatrixTuple::new(wire.n, wire.matrices).map_err(|e| serde::de::Error::custom(e.to_string()))
    }
}

impl MatrixTuple {
    pub fn new(n: usize, matrices: Vec<HermitianMatrix>) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedTuple("dimension must be at least 1".into()));
        }
        if matrices.len() != n {
            return Err(Error::MalformedTuple(format!(
                "expected exactly {n} matrices, found {}",
                matrices.len()
            )));
        }
        for (k, m) in matrices.iter().enumerate() {
            if m.n() != n {
                return Err(Error::MalformedTuple(format!(
                    "matrix {k} has dimension {}, expected {n}",
                    m.n()
                )));
            }
        }
        Ok(MatrixTuple { n, matrices })
    }

    /// The tuple `(a, a, ..., a)`.
    pub fn repeated(a: &HermitianMatrix) -> Self {
        MatrixTuple {
            n: a.n(),
            matrices: vec![a.clone(); a.n()],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrices(&self) -> &[HermitianMatrix] {
        &self.matrices
    }
}

fn real_part(v: GaussianRational, context: &str) -> Rational {
    assert!(
        v.im.is_zero(),
        "{context}: imaginary part {} must vanish for Hermitian input",
        v.im
    );
    v.re
}

/// The mixed discriminant via the polarization identity
///
/// ```text
/// D(A_1, ..., A_n) = sum over S in {1..n} of (-1)^(n-|S|) det(sum_{i in S} A_i)
/// ```
///
/// `2^n` determinant evaluations, each on an `n x n` Hermitian sum.
pub fn mixed_disc(tuple: &MatrixTuple) -> Rational {
    let n = tuple.n();
    let mut acc = Rational::zero();
    for mask in 1u64..(1u64 << n) {
        let mut sum = HermitianMatrix::zero(n);
        let mut size = 0;
        for (k, m) in tuple.matrices().iter().enumerate() {
            if mask & (1 << k) != 0 {
                sum = &sum + m;
                size += 1;
            }
        }
        let d = real_part(sum.det(), "mixed_disc subset determinant");
        if (n - size) % 2 == 0 {
            acc += &d;
        } else {
            acc -= &d;
        }
    }
    acc
}

/// `D(A, ..., A) = n! * det(A)` without polarizing.
pub fn mixed_disc_of_power(a: &HermitianMatrix) -> Rational {
    let n = a.n();
    let mut factorial = Rational::one();
    for k in 2..=n as i64 {
        factorial *= &Rational::from_int(k);
    }
    factorial * real_part(a.det(), "determinant")
}

/// Independent oracle: the double permutation sum
///
/// ```text
/// D(A_1, ..., A_n) = sum over sigma, tau in S_n of
///     sgn(sigma) sgn(tau) * prod_k (A_k)[sigma(k), tau(k)]
/// ```
///
/// Capped at [`DEFAULT_ORACLE_CAP`]; use
/// [`mixed_disc_oracle_with_cap`] to override.
pub fn mixed_disc_oracle(tuple: &MatrixTuple) -> Result<Rational> {
    mixed_disc_oracle_with_cap(tuple, DEFAULT_ORACLE_CAP)
}

pub fn mixed_disc_oracle_with_cap(tuple: &MatrixTuple, cap: usize) -> Result<Rational> {
    let n = tuple.n();
    if n > cap {
        return Err(Error::OracleCapExceeded { n, cap });
    }
    let perms: Vec<(Vec<usize>, i32)> = (0..n)
        .permutations(n)
        .map(|p| {
            let sign = permutation_sign(&p);
            (p, sign)
        })
        .collect();
    let mut acc = GaussianRational::zero();
    for (sigma, s_sign) in &perms {
        for (tau, t_sign) in &perms {
            let mut prod = GaussianRational::one();
            for (k, m) in tuple.matrices().iter().enumerate() {
                prod = &prod * m.entry(sigma[k], tau[k]);
                if prod.is_zero() {
                    break;
                }
            }
            if prod.is_zero() {
                continue;
            }
            if s_sign * t_sign > 0 {
                acc += &prod;
            } else {
                acc -= &prod;
            }
        }
    }
    Ok(real_part(acc, "mixed_disc_oracle"))
}

fn permutation_sign(p: &[usize]) -> i32 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Mixed discriminant of a tuple given in compressed multiplicity form:
/// `[(A, m_A), (B, m_B), ...]` with the multiplicities summing to the
/// common matrix dimension.
pub fn mixed_disc_multi(parts: &[(HermitianMatrix, usize)]) -> Result<Rational> {
    let tuple = expand_multi(parts)?;
    Ok(mixed_disc(&tuple))
}

/// Expands a multiplicity list into a full [`MatrixTuple`], validating
/// that the multiplicities sum to the dimension.
pub fn expand_multi(parts: &[(HermitianMatrix, usize)]) -> Result<MatrixTuple> {
    let n = parts
        .first()
        .map(|(m, _)| m.n())
        .ok_or_else(|| Error::MalformedTuple("empty multiplicity list".into()))?;
    let total: usize = parts.iter().map(|(_, mult)| mult).sum();
    if total != n {
        return Err(Error::MultiplicitySum {
            expected: n,
            found: total,
        });
    }
    let mut matrices = Vec::with_capacity(n);
    for (m, mult) in parts {
        if m.n() != n {
            return Err(Error::MalformedTuple(format!(
                "matrix has dimension {}, expected {n}",
                m.n()
            )));
        }
        for _ in 0..*mult {
            matrices.push(m.clone());
        }
    }
    MatrixTuple::new(n, matrices)
}
