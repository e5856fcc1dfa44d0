//! The bilinear form `Q(B, C) = D(A_1, ..., A_{n-2}, B, C)` attached to a
//! reference tuple, and the linear Hodge-index machinery built on it:
//! Gram matrices, primitive subspaces, exact signatures, a Lefschetz-type
//! decomposition, and the null-direction (zero-eigenvector) check.
//!
//! All spectral questions are answered by symmetric congruence
//! diagonalization over the rationals; no eigenvalues are ever computed.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::{congruence_diagonalize, CongruenceDiagonalization, RatMatrix};
use crate::matrix::{HermitianBasis, HermitianMatrix};
use crate::mixed_disc::{mixed_disc, MatrixTuple};
use crate::positivity::{is_psd, PsdKind};
use crate::scalar::Rational;
use crate::Result;

/// The fixed `(n-2)`-tuple of reference matrices defining the bilinear
/// form `Q(B, C) = D(omega_1, ..., omega_{n-2}, B, C)`. Empty when
/// `n = 2`.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct OmegaTuple {
    n: usize,
    items: Vec<HermitianMatrix>,
}

impl<'de> Deserialize<'de> for OmegaTuple {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            n: usize,
            items: Vec<HermitianMatrix>,
        }
        let wire = Wire::deserialize(deserializer)?;
        OmegaTuple::new(wire.n, wire.items).map_err(|e| serde::de::Error::custom(e.to_string()))
    }
}

impl OmegaTuple {
    pub fn new(n: usize, items: Vec<HermitianMatrix>) -> Result<Self> {
        if n < 2 {
            return Err(Error::MalformedTuple(
                "the reference tuple needs dimension at least 2".into(),
            ));
        }
        if items.len() != n - 2 {
            return Err(Error::MalformedTuple(format!(
                "expected {} reference matrices for dimension {n}, found {}",
                n - 2,
                items.len()
            )));
        }
        for (k, m) in items.iter().enumerate() {
            if m.n() != n {
                return Err(Error::MalformedTuple(format!(
                    "reference matrix {k} has dimension {}, expected {n}",
                    m.n()
                )));
            }
        }
        Ok(OmegaTuple { n, items })
    }

    /// The tuple `(I, ..., I)`.
    pub fn identity(n: usize) -> Result<Self> {
        let items = vec![HermitianMatrix::identity(n); n.saturating_sub(2)];
        OmegaTuple::new(n, items)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn items(&self) -> &[HermitianMatrix] {
        &self.items
    }

    /// `D(omega, x, y)`, the bilinear form itself.
    pub fn form(&self, x: &HermitianMatrix, y: &HermitianMatrix) -> Result<Rational> {
        let mut matrices = self.items.clone();
        matrices.push(x.clone());
        matrices.push(y.clone());
        let tuple = MatrixTuple::new(self.n, matrices)?;
        Ok(mixed_disc(&tuple))
    }
}

/// The Gram matrix of `Q` in the canonical Hermitian basis:
/// `entries[k][l] = D(omega, e_k, e_l)`, an `n^2 x n^2` symmetric
/// rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct GramMatrix {
    n: usize,
    entries: RatMatrix,
}

impl GramMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    pub fn entries(&self) -> &RatMatrix {
        &self.entries
    }

    pub fn at(&self, k: usize, l: usize) -> &Rational {
        self.entries.at(k, l)
    }

    /// `Q(v, w)` for coordinate vectors in the canonical basis.
    pub fn form(&self, v: &[Rational], w: &[Rational]) -> Rational {
        let gw = self.entries.mul_vec(w);
        v.iter().zip(&gw).map(|(a, b)| a * b).sum()
    }
}

impl Serialize for GramMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            n: usize,
            entries: Vec<Vec<&'a Rational>>,
        }
        let d = self.dim();
        let wire = Wire {
            n: self.n,
            entries: (0..d)
                .map(|k| (0..d).map(|l| self.at(k, l)).collect())
                .collect(),
        };
        wire.serialize(serializer)
    }
}

/// Coordinates of the linear functional `C -> D(omega, x, C)` in the
/// canonical basis: `coeffs[k] = D(omega, x, e_k)`.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct FunctionalVec {
    n: usize,
    coeffs: Vec<Rational>,
}

impl FunctionalVec {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Evaluates the functional at `b` by pairing with its coordinates.
    pub fn evaluate(&self, b: &HermitianMatrix) -> Result<Rational> {
        let basis = HermitianBasis::new(self.n);
        let coords = basis.decompose(b)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&coords)
            .map(|(c, x)| c * x)
            .sum())
    }
}

/// A subspace of the `n^2`-dimensional Hermitian coordinate space,
/// spanned by exact rational basis vectors.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct PrimitiveSubspace {
    n: usize,
    basis_vectors: Vec<Vec<Rational>>,
}

impl PrimitiveSubspace {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis_vectors.len()
    }

    pub fn basis_vectors(&self) -> &[Vec<Rational>] {
        &self.basis_vectors
    }

    /// The whole coordinate space, with the standard basis.
    pub fn full(n: usize) -> Self {
        let d = n * n;
        let basis_vectors = (0..d)
            .map(|k| {
                let mut v = vec![Rational::zero(); d];
                v[k] = Rational::one();
                v
            })
            .collect();
        PrimitiveSubspace { n, basis_vectors }
    }

    fn basis_matrix(&self) -> RatMatrix {
        RatMatrix::from_columns(&self.basis_vectors)
    }
}

/// Exact inertia counts of a symmetric form.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Signature {
    #[serde(rename = "pos")]
    pub positive: usize,
    pub zero: usize,
    #[serde(rename = "neg")]
    pub negative: usize,
}

impl Signature {
    pub fn dim(&self) -> usize {
        self.positive + self.zero + self.negative
    }
}

/// Assembles the full Gram matrix of `Q` in the canonical basis.
/// Symmetric by the symmetry of the mixed discriminant; only the upper
/// triangle is computed.
pub fn gram(omega: &OmegaTuple) -> Result<GramMatrix> {
    let n = omega.n();
    let basis = HermitianBasis::new(n);
    let d = basis.len();
    let mut entries = RatMatrix::zeros(d, d);
    for k in 0..d {
        for l in k..d {
            let v = omega.form(basis.element(k), basis.element(l))?;
            *entries.at_mut(l, k) = v.clone();
            *entries.at_mut(k, l) = v;
        }
    }
    Ok(GramMatrix { n, entries })
}

/// The functional `C -> D(omega, x, C)` as a coordinate vector.
pub fn functional(omega: &OmegaTuple, x: &HermitianMatrix) -> Result<FunctionalVec> {
    if x.n() != omega.n() {
        return Err(Error::DimensionMismatch {
            expected: omega.n(),
            found: x.n(),
        });
    }
    let basis = HermitianBasis::new(omega.n());
    let coeffs = basis
        .elements()
        .iter()
        .map(|e| omega.form(x, e))
        .collect::<Result<Vec<_>>>()?;
    Ok(FunctionalVec {
        n: omega.n(),
        coeffs,
    })
}

/// The functional of an arbitrary `(n-1)`-tuple, `C -> D(ms, C)`.
pub fn functional_of_tuple(ms: &[HermitianMatrix]) -> Result<FunctionalVec> {
    let n = ms
        .first()
        .map(|m| m.n())
        .ok_or_else(|| Error::MalformedTuple("empty functional tuple".into()))?;
    if ms.len() + 1 != n {
        return Err(Error::MalformedTuple(format!(
            "functional tuple needs {} matrices for dimension {n}, found {}",
            n - 1,
            ms.len()
        )));
    }
    let basis = HermitianBasis::new(n);
    let coeffs = basis
        .elements()
        .iter()
        .map(|e| {
            let mut matrices = ms.to_vec();
            matrices.push(e.clone());
            Ok(mixed_disc(&MatrixTuple::new(n, matrices)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FunctionalVec { n, coeffs })
}

/// The primitive subspace of `(omega, eta)`: the exact kernel of the
/// functional `C -> D(omega, eta, C)`. Has dimension `n^2 - 1` when the
/// functional is nonzero and `n^2` when it vanishes identically.
pub fn primitive_space(omega: &OmegaTuple, eta: &HermitianMatrix) -> Result<PrimitiveSubspace> {
    let f = functional(omega, eta)?;
    let row = RatMatrix::from_rows(vec![f.coeffs().to_vec()]);
    Ok(PrimitiveSubspace {
        n: omega.n(),
        basis_vectors: row.kernel_basis(),
    })
}

/// The restriction of the Gram form to a subspace: `B^t G B` for the
/// subspace basis matrix `B`.
pub fn restricted_form(g: &GramMatrix, sub: &PrimitiveSubspace) -> RatMatrix {
    assert_eq!(g.n(), sub.n(), "Gram and subspace dimensions differ");
    let b = sub.basis_matrix();
    b.transpose().mul(&g.entries.mul(&b))
}

/// Exact signature of `Q` restricted to the given subspace, computed by
/// congruence diagonalization of `B^t G B`.
pub fn signature_on(g: &GramMatrix, sub: &PrimitiveSubspace) -> Signature {
    let r = restricted_form(g, sub);
    let cd = congruence_diagonalize(&r);
    signature_of_diagonal(&cd.diag)
}

fn signature_of_diagonal(diag: &[Rational]) -> Signature {
    let mut sig = Signature {
        positive: 0,
        zero: 0,
        negative: 0,
    };
    for v in diag {
        match v.signum() {
            1 => sig.positive += 1,
            -1 => sig.negative += 1,
            _ => sig.zero += 1,
        }
    }
    sig
}

/// Null directions of the restricted form, mapped back to ambient
/// coordinates: the columns of the congruence transform at zero diagonal
/// positions span the radical of `B^t G B` exactly.
pub fn restricted_null_directions(g: &GramMatrix, sub: &PrimitiveSubspace) -> Vec<Vec<Rational>> {
    let r = restricted_form(g, sub);
    let CongruenceDiagonalization { diag, transform } = congruence_diagonalize(&r);
    let b = sub.basis_matrix();
    diag.iter()
        .enumerate()
        .filter(|(_, v)| v.is_zero())
        .map(|(j, _)| b.mul_vec(&transform.column(j)))
        .collect()
}

/// Outcome of the restricted signature test on the primitive subspace.
#[derive(Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum HodgeIndexOutcome {
    /// The restricted form is negative definite: signature
    /// `(0, 0, dim)`.
    SatisfiesHit,
    /// Negative semidefinite with a nontrivial radical; carries an exact
    /// basis of the null directions as Hermitian matrices.
    SemiNegativeWithKernel { kernel: Vec<HermitianMatrix> },
    /// The restricted form takes a positive value; carries a primitive
    /// witness `v` with `Q(v, v) > 0`.
    Indefinite { witness: HermitianMatrix },
}

/// Report of [`hodge_index_check`]: the verdict plus the exact restricted
/// signature it was derived from.
#[derive(Clone, Serialize)]
pub struct HodgeIndexReport {
    #[serde(flatten)]
    pub outcome: HodgeIndexOutcome,
    pub signature: Signature,
    pub primitive_dim: usize,
}

/// Computes the primitive space of `(omega, eta)`, restricts the Gram
/// form to it, and classifies the signature.
pub fn hodge_index_check(omega: &OmegaTuple, eta: &HermitianMatrix) -> Result<HodgeIndexReport> {
    let g = gram(omega)?;
    let sub = primitive_space(omega, eta)?;
    hodge_index_check_with(&g, &sub)
}

/// Same as [`hodge_index_check`] but on a precomputed Gram matrix and
/// subspace, for callers that reuse them.
pub fn hodge_index_check_with(g: &GramMatrix, sub: &PrimitiveSubspace) -> Result<HodgeIndexReport> {
    let r = restricted_form(g, sub);
    let CongruenceDiagonalization { diag, transform } = congruence_diagonalize(&r);
    let signature = signature_of_diagonal(&diag);
    let basis = HermitianBasis::new(g.n());
    let b = sub.basis_matrix();
    let outcome = if signature.positive > 0 {
        let j = diag
            .iter()
            .position(|v| v.is_positive())
            .expect("positive count is nonzero");
        let ambient = b.mul_vec(&transform.column(j));
        debug_assert!(g.form(&ambient, &ambient).is_positive());
        HodgeIndexOutcome::Indefinite {
            witness: basis.recompose(&ambient)?,
        }
    } else if signature.zero > 0 {
        let kernel = diag
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_zero())
            .map(|(j, _)| basis.recompose(&b.mul_vec(&transform.column(j))))
            .collect::<Result<Vec<_>>>()?;
        HodgeIndexOutcome::SemiNegativeWithKernel { kernel }
    } else {
        HodgeIndexOutcome::SatisfiesHit
    };
    Ok(HodgeIndexReport {
        outcome,
        signature,
        primitive_dim: sub.dim(),
    })
}

/// The Lefschetz-type decomposition `beta = c * eta + gamma` with
/// `gamma` primitive for `(omega, eta)`.
///
/// Requires `D(omega, eta, eta) != 0`; then
/// `c = D(omega, eta, beta) / D(omega, eta, eta)` and the primitivity of
/// `gamma` is automatic. The pair is unique: pairing any decomposition
/// against the functional of `eta` forces this `c`.
#[derive(Clone, Serialize)]
pub struct LefschetzDecomposition {
    pub coefficient: Rational,
    pub primitive_part: HermitianMatrix,
}

pub fn lefschetz(
    omega: &OmegaTuple,
    eta: &HermitianMatrix,
    beta: &HermitianMatrix,
) -> Result<LefschetzDecomposition> {
    let dee = omega.form(eta, eta)?;
    if dee.is_zero() {
        return Err(Error::PreconditionViolation(
            "D(omega, eta, eta) = 0: the Lefschetz coefficient is undefined".into(),
        ));
    }
    let deb = omega.form(eta, beta)?;
    let coefficient = &deb / &dee;
    let primitive_part = beta - &eta.scale(&coefficient);
    debug_assert!(omega.form(eta, &primitive_part)?.is_zero());
    Ok(LefschetzDecomposition {
        coefficient,
        primitive_part,
    })
}

/// Report of [`zero_vector_check`]: whether the functional of `gamma`
/// vanishes identically, plus the functional itself as the witness when
/// it does not.
pub struct ZeroVectorReport {
    pub holds: bool,
    pub functional: FunctionalVec,
}

/// The null-direction check: for `omega` and `eta` semi-positive
/// definite with `D(omega, eta, eta) != 0`, and `gamma` primitive with
/// `Q(gamma, gamma) = 0`, the functional `C -> D(omega, gamma, C)` must
/// vanish identically. A `holds = false` report is a theorem-violation
/// event; the returned functional is the full witness.
///
/// All preconditions are verified exactly and reported as errors
/// (distinct from a negative verdict) when they fail.
pub fn zero_vector_check(
    omega: &OmegaTuple,
    eta: &HermitianMatrix,
    gamma: &HermitianMatrix,
) -> Result<ZeroVectorReport> {
    for (k, item) in omega.items().iter().enumerate() {
        if matches!(is_psd(item).kind, PsdKind::NotPsd { .. }) {
            return Err(Error::PreconditionViolation(format!(
                "reference matrix {k} is not semi-positive definite"
            )));
        }
    }
    if matches!(is_psd(eta).kind, PsdKind::NotPsd { .. }) {
        return Err(Error::PreconditionViolation(
            "eta is not semi-positive definite".into(),
        ));
    }
    if omega.form(eta, eta)?.is_zero() {
        return Err(Error::PreconditionViolation(
            "D(omega, eta, eta) = 0".into(),
        ));
    }
    if !omega.form(eta, gamma)?.is_zero() {
        return Err(Error::PreconditionViolation(
            "gamma is not primitive: D(omega, eta, gamma) != 0".into(),
        ));
    }
    if !omega.form(gamma, gamma)?.is_zero() {
        return Err(Error::PreconditionViolation(
            "Q(gamma, gamma) != 0".into(),
        ));
    }
    let f = functional(omega, gamma)?;
    Ok(ZeroVectorReport {
        holds: f.is_zero(),
        functional: f,
    })
}
