//! Exact positivity predicates: semi-positive and positive definiteness
//! through characteristic-polynomial coefficient signs, the generalized
//! `m`-positivity test, and membership queries for the associated convex
//! cone.
//!
//! A Hermitian matrix is PSD exactly when every coefficient `e_k` of
//! `det(tI + A) = sum_k e_k t^(n-k)` is nonnegative: the `e_k` are the
//! elementary symmetric functions of the (real) eigenvalues, and a
//! polynomial with nonnegative coefficients and leading coefficient 1
//! has no positive root. This stays in rational arithmetic; no
//! eigenvalue or square root is ever needed.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::matrix::{ComplexMatrix, HermitianMatrix};
use crate::mixed_disc::mixed_disc_multi;
use crate::scalar::{GaussianRational, Rational};
use crate::Result;

/// Verdict of [`is_psd`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PsdKind {
    PositiveDefinite,
    /// PSD with `rank < n`; the rank is read off the characteristic
    /// polynomial (largest `k` with `e_k != 0`).
    SemidefiniteRankDeficient { rank: usize },
    /// Not PSD; `coefficient_index` is the smallest `k` with `e_k < 0`.
    NotPsd { coefficient_index: usize },
}

/// Verdict plus the exact certificate it was read from: the full
/// coefficient list `e_0..e_n` of `det(tI + A)`.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct PositivityReport {
    #[serde(flatten)]
    pub kind: PsdKind,
    pub char_poly: Vec<Rational>,
}

impl PositivityReport {
    pub fn is_psd(&self) -> bool {
        !matches!(self.kind, PsdKind::NotPsd { .. })
    }

    pub fn is_pd(&self) -> bool {
        matches!(self.kind, PsdKind::PositiveDefinite)
    }

    /// Rank when PSD; meaningless (None) otherwise.
    pub fn rank(&self) -> Option<usize> {
        match self.kind {
            PsdKind::PositiveDefinite => Some(self.char_poly.len() - 1),
            PsdKind::SemidefiniteRankDeficient { rank } => Some(rank),
            PsdKind::NotPsd { .. } => None,
        }
    }
}

/// Coefficients `e_0..e_n` of `det(tI + A)`, the elementary symmetric
/// functions of the eigenvalues, by the trace recurrence
///
/// ```text
/// M_1 = I,   c_k = -tr(A M_k) / k,   M_{k+1} = A M_k + c_k I
/// ```
///
/// which yields `det(tI - A) = sum c_k t^(n-k)`; then `e_k = (-1)^k c_k`.
pub fn char_poly_coefficients(a: &HermitianMatrix) -> Vec<Rational> {
    let n = a.n();
    let am = a.as_complex();
    let mut m = ComplexMatrix::identity(n);
    let mut c = vec![Rational::one()];
    for k in 1..=n {
        let product = am.mul(&m);
        let trace = product.trace();
        assert!(
            trace.im.is_zero(),
            "trace of a real polynomial in a Hermitian matrix must be real"
        );
        let ck = -(&trace.re / &Rational::from_int(k as i64));
        if k < n {
            m = product;
            let shift = GaussianRational::from_rational(ck.clone());
            for i in 0..n {
                let updated = m.at(i, i) + &shift;
                *m.at_mut(i, i) = updated;
            }
        }
        c.push(ck);
    }
    c.into_iter()
        .enumerate()
        .map(|(k, ck)| if k % 2 == 0 { ck } else { -ck })
        .collect()
}

/// Exact PSD/PD test with certificate.
pub fn is_psd(a: &HermitianMatrix) -> PositivityReport {
    let e = char_poly_coefficients(a);
    let n = e.len() - 1;
    let kind = match e.iter().position(|v| v.is_negative()) {
        Some(idx) => PsdKind::NotPsd {
            coefficient_index: idx,
        },
        None => {
            let rank = (0..=n).rev().find(|&k| !e[k].is_zero()).unwrap_or(0);
            if rank == n {
                PsdKind::PositiveDefinite
            } else {
                PsdKind::SemidefiniteRankDeficient { rank }
            }
        }
    };
    PositivityReport { kind, char_poly: e }
}

pub fn is_positive_definite(a: &HermitianMatrix) -> bool {
    is_psd(a).is_pd()
}

/// Exponential cross-check: PSD iff every principal minor is
/// nonnegative. `2^n - 1` exact determinants; intended for validating
/// [`is_psd`], not for production use.
pub fn psd_via_principal_minors(a: &HermitianMatrix) -> bool {
    let n = a.n();
    for mask in 1u64..(1u64 << n) {
        let indices: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if principal_minor(a, &indices).is_negative() {
            return false;
        }
    }
    true
}

/// Sylvester cross-check: PD iff every leading principal minor is
/// positive.
pub fn pd_via_leading_minors(a: &HermitianMatrix) -> bool {
    let n = a.n();
    (1..=n).all(|k| {
        let indices: Vec<usize> = (0..k).collect();
        principal_minor(a, &indices).is_positive()
    })
}

fn principal_minor(a: &HermitianMatrix, indices: &[usize]) -> Rational {
    let k = indices.len();
    let mut sub = ComplexMatrix::zero(k);
    for (r, &i) in indices.iter().enumerate() {
        for (c, &j) in indices.iter().enumerate() {
            *sub.at_mut(r, c) = a.entry(i, j).clone();
        }
    }
    let d = sub.det();
    assert!(d.im.is_zero(), "principal minor of a Hermitian matrix is real");
    d.re
}

/// A well-formed `m`-positivity query: `m` positive definite factors
/// `omega_1..omega_m`, a reference `eta` (defaults to the identity), and
/// the matrix `alpha` under test, with `m <= n - 2`.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct ConeQuery {
    n: usize,
    m: usize,
    kaehler_factors: Vec<HermitianMatrix>,
    eta: HermitianMatrix,
    alpha: HermitianMatrix,
}

impl ConeQuery {
    pub fn new(
        kaehler_factors: Vec<HermitianMatrix>,
        eta: Option<HermitianMatrix>,
        alpha: HermitianMatrix,
    ) -> Result<Self> {
        let n = alpha.n();
        let m = kaehler_factors.len();
        if n < 2 || m > n - 2 {
            return Err(Error::MalformedTuple(format!(
                "m-positivity needs m <= n - 2, got m = {m}, n = {n}"
            )));
        }
        for (k, f) in kaehler_factors.iter().enumerate() {
            if f.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: f.n(),
                });
            }
            if !is_positive_definite(f) {
                return Err(Error::PreconditionViolation(format!(
                    "factor {k} is not positive definite"
                )));
            }
        }
        let eta = eta.unwrap_or_else(|| HermitianMatrix::identity(n));
        if eta.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: eta.n(),
            });
        }
        Ok(ConeQuery {
            n,
            m,
            kaehler_factors,
            eta,
            alpha,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn alpha(&self) -> &HermitianMatrix {
        &self.alpha
    }

    /// Same query with a different test matrix.
    pub fn with_alpha(&self, alpha: HermitianMatrix) -> Result<Self> {
        ConeQuery::new(self.kaehler_factors.clone(), Some(self.eta.clone()), alpha)
    }
}

impl<'de> Deserialize<'de> for ConeQuery {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            m: Option<usize>,
            #[serde(default)]
            kaehler: Vec<HermitianMatrix>,
            eta: Option<HermitianMatrix>,
            alpha: HermitianMatrix,
        }
        let wire = Wire::deserialize(deserializer)?;
        if let Some(m) = wire.m {
            if m != wire.kaehler.len() {
                return Err(serde::de::Error::custom(format!(
                    "declared m = {m} but {} kaehler factors were given",
                    wire.kaehler.len()
                )));
            }
        }
        ConeQuery::new(wire.kaehler, wire.eta, wire.alpha)
            .map_err(|e| serde::de::Error::custom(e.to_string()))
    }
}

/// Result of the `m`-positivity chain test.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum MPositivity {
    /// Every `d_k > 0` for `k = 1..n-m`.
    Positive,
    /// First `k` whose value fails strict positivity, with that value.
    FailsAt { k: usize, value: Rational },
}

/// Membership verdict for the convex cone carved out by the chain.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConeMembership {
    Interior,
    /// All `d_k >= 0` with at least one zero: a boundary certificate for
    /// the closed cone (sufficient, not claimed to be characterizing).
    ClosureBoundary,
    Outside,
}

/// The chain values `d_k = D(omega_1..omega_m, eta^(n-m-k), alpha^k)`
/// for `k = 1..n-m`.
pub fn cone_values(q: &ConeQuery) -> Result<Vec<Rational>> {
    let span = q.n - q.m;
    (1..=span)
        .map(|k| {
            let mut parts: Vec<(HermitianMatrix, usize)> = q
                .kaehler_factors
                .iter()
                .map(|f| (f.clone(), 1))
                .collect();
            parts.push((q.eta.clone(), span - k));
            parts.push((q.alpha.clone(), k));
            mixed_disc_multi(&parts)
        })
        .collect()
}

/// Strict positivity of the whole chain, reporting the first failure.
pub fn m_positivity_check(q: &ConeQuery) -> Result<MPositivity> {
    let values = cone_values(q)?;
    for (idx, v) in values.iter().enumerate() {
        if !v.is_positive() {
            return Ok(MPositivity::FailsAt {
                k: idx + 1,
                value: v.clone(),
            });
        }
    }
    Ok(MPositivity::Positive)
}

/// Cone membership from the sign pattern of the chain values.
pub fn cone_gamma_membership(q: &ConeQuery) -> Result<ConeMembership> {
    let values = cone_values(q)?;
    if values.iter().any(|v| v.is_negative()) {
        Ok(ConeMembership::Outside)
    } else if values.iter().any(|v| v.is_zero()) {
        Ok(ConeMembership::ClosureBoundary)
    } else {
        Ok(ConeMembership::Interior)
    }
}
