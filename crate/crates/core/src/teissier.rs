//! Decision procedures on top of the bilinear form: verification of the
//! two-slot discriminant inequality, the equality-case classifier with
//! its proportionality witnesses, the torus-model variant, the `s_k`
//! intersection-number chain, and a constructive generator for sharp
//! equality instances that sit outside every hypothesis.

use num_bigint::Sign;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::hodge::{functional, functional_of_tuple, FunctionalVec, OmegaTuple};
use crate::linalg::RatMatrix;
use crate::matrix::{HermitianBasis, HermitianMatrix};
use crate::mixed_disc::mixed_disc_multi;
use crate::positivity::is_psd;
use crate::scalar::Rational;
use crate::Result;

/// Which hypothesis regime a classification runs under. `B1` demands a
/// semi-positive reference tuple and `a`, plus `D(omega, b, b) >= 0`;
/// `B2` swaps the last condition for `D(omega, a, a) > 0`; `Unchecked`
/// claims nothing and never reports a theorem violation.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    B1,
    B2,
    Unchecked,
}

/// A single failed hypothesis, with the exact value that failed it.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum HypothesisFailure {
    OmegaItemNotPsd { index: usize },
    ANotPsd,
    BFormNegative { value: Rational },
    AFormNotPositive { value: Rational },
}

/// Failure lists for both regimes; an empty list means that regime's
/// hypotheses hold.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct HypothesisFlags {
    pub b1: Vec<HypothesisFailure>,
    pub b2: Vec<HypothesisFailure>,
}

impl HypothesisFlags {
    pub fn b1_holds(&self) -> bool {
        self.b1.is_empty()
    }

    pub fn b2_holds(&self) -> bool {
        self.b2.is_empty()
    }
}

/// An exact pair `(s0, t0) != (0, 0)` with `s0 * F_A + t0 * F_B = 0`,
/// normalized to coprime integers with the first nonzero entry positive.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ProportionalityWitness {
    pub s0: Rational,
    pub t0: Rational,
}

/// Everything needed to reproduce a claimed counterexample to the
/// equality theorem. Emitting one is always a reportable event.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct ViolationWitness {
    pub omega: OmegaTuple,
    pub a: HermitianMatrix,
    pub b: HermitianMatrix,
    pub mode: Mode,
    pub lhs: Rational,
    pub rhs: Rational,
    pub f_a: FunctionalVec,
    pub f_b: FunctionalVec,
}

/// Classifier output.
#[derive(Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    /// `lhs != rhs`; the gap `lhs - rhs` is positive whenever the
    /// running mode's hypotheses hold.
    StrictInequality { gap: Rational },
    /// Equality with functionals exactly proportional.
    EqualityProportional { witness: ProportionalityWitness },
    /// Equality, functionals not proportional, and at least one
    /// hypothesis of the running regime failed; the flags name every
    /// failure in both regimes.
    EqualityNonProportionalOutsideHypotheses { flags: HypothesisFlags },
    /// A required precondition failed where the operation treats that as
    /// a verdict rather than an error (torus-model verification).
    HypothesisViolated { detail: String },
    /// The theorem's conclusion failed with its hypotheses intact. Never
    /// reachable through correct arithmetic; carries the full instance.
    TheoremViolation { witness: Box<ViolationWitness> },
}

impl Verdict {
    pub fn is_violation(&self) -> bool {
        matches!(self, Verdict::TheoremViolation { .. })
    }
}

/// A classification instance: reference tuple, the two matrices, and the
/// hypothesis regime to run under.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqualityQuery {
    pub omega: OmegaTuple,
    pub a: HermitianMatrix,
    pub b: HermitianMatrix,
    pub mode: Mode,
}

impl EqualityQuery {
    pub fn new(
        omega: OmegaTuple,
        a: HermitianMatrix,
        b: HermitianMatrix,
        mode: Mode,
    ) -> Result<Self> {
        for m in [&a, &b] {
            if m.n() != omega.n() {
                return Err(Error::DimensionMismatch {
                    expected: omega.n(),
                    found: m.n(),
                });
            }
        }
        Ok(EqualityQuery { omega, a, b, mode })
    }
}

/// Report of [`alexandrov_verify`].
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct AlexandrovReport {
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
}

/// Verifies `D(omega, a, b)^2 >= D(omega, a, a) * D(omega, b, b)` for
/// semi-positive `omega` items and `a` (`b` arbitrary Hermitian). The
/// hypothesis is checked first and its failure is an error, not a
/// verdict; under it, `holds = false` would disprove the inequality.
pub fn alexandrov_verify(
    omega: &OmegaTuple,
    a: &HermitianMatrix,
    b: &HermitianMatrix,
) -> Result<AlexandrovReport> {
    for (k, item) in omega.items().iter().enumerate() {
        if !is_psd(item).is_psd() {
            return Err(Error::HypothesisViolation(format!(
                "reference matrix {k} is not semi-positive definite"
            )));
        }
    }
    if !is_psd(a).is_psd() {
        return Err(Error::HypothesisViolation(
            "a is not semi-positive definite".into(),
        ));
    }
    let lhs = omega.form(a, b)?.square();
    let rhs = &omega.form(a, a)? * &omega.form(b, b)?;
    let holds = !(&lhs - &rhs).is_negative();
    Ok(AlexandrovReport { lhs, rhs, holds })
}

fn hypothesis_flags(
    omega: &OmegaTuple,
    a: &HermitianMatrix,
    daa: &Rational,
    dbb: &Rational,
) -> HypothesisFlags {
    let mut shared = Vec::new();
    for (index, item) in omega.items().iter().enumerate() {
        if !is_psd(item).is_psd() {
            shared.push(HypothesisFailure::OmegaItemNotPsd { index });
        }
    }
    if !is_psd(a).is_psd() {
        shared.push(HypothesisFailure::ANotPsd);
    }
    let mut b1 = shared.clone();
    if dbb.is_negative() {
        b1.push(HypothesisFailure::BFormNegative { value: dbb.clone() });
    }
    let mut b2 = shared;
    if !daa.is_positive() {
        b2.push(HypothesisFailure::AFormNotPositive { value: daa.clone() });
    }
    HypothesisFlags { b1, b2 }
}

/// Decides the equality case: strict inequality, proportional equality
/// with witness, or non-proportional equality outside the hypotheses.
/// A non-proportional equality (or a reversed inequality) while the
/// running mode's hypotheses hold becomes a [`Verdict::TheoremViolation`].
pub fn classify_equality(q: &EqualityQuery) -> Result<Verdict> {
    let dab = q.omega.form(&q.a, &q.b)?;
    let daa = q.omega.form(&q.a, &q.a)?;
    let dbb = q.omega.form(&q.b, &q.b)?;
    let flags = hypothesis_flags(&q.omega, &q.a, &daa, &dbb);
    let applicable = match q.mode {
        Mode::B1 => flags.b1_holds(),
        Mode::B2 => flags.b2_holds(),
        Mode::Unchecked => false,
    };
    let lhs = dab.square();
    let rhs = &daa * &dbb;
    let gap = &lhs - &rhs;
    if !gap.is_zero() {
        if gap.is_negative() && applicable {
            let witness = violation_witness(q, lhs, rhs)?;
            return Ok(Verdict::TheoremViolation { witness });
        }
        return Ok(Verdict::StrictInequality { gap });
    }
    let f_a = functional(&q.omega, &q.a)?;
    let f_b = functional(&q.omega, &q.b)?;
    match proportional_vectors(f_a.coeffs(), f_b.coeffs()) {
        Some((s0, t0)) => Ok(Verdict::EqualityProportional {
            witness: ProportionalityWitness { s0, t0 },
        }),
        None if applicable => {
            let witness = violation_witness(q, lhs, rhs)?;
            Ok(Verdict::TheoremViolation { witness })
        }
        None => Ok(Verdict::EqualityNonProportionalOutsideHypotheses { flags }),
    }
}

fn violation_witness(
    q: &EqualityQuery,
    lhs: Rational,
    rhs: Rational,
) -> Result<Box<ViolationWitness>> {
    Ok(Box::new(ViolationWitness {
        omega: q.omega.clone(),
        a: q.a.clone(),
        b: q.b.clone(),
        mode: q.mode,
        lhs,
        rhs,
        f_a: functional(&q.omega, &q.a)?,
        f_b: functional(&q.omega, &q.b)?,
    }))
}

/// Exact linear dependence test on two coordinate vectors: returns a
/// normalized `(s0, t0) != (0, 0)` with `s0 * u + t0 * v = 0` when the
/// stacked `2 x d` matrix has rank at most 1, `None` when rank 2.
pub fn proportional_vectors(u: &[Rational], v: &[Rational]) -> Option<(Rational, Rational)> {
    assert_eq!(u.len(), v.len(), "vector lengths differ");
    let stacked = RatMatrix::from_rows(vec![u.to_vec(), v.to_vec()]);
    if stacked.rank() == 2 {
        return None;
    }
    let u_zero = u.iter().all(|c| c.is_zero());
    let v_zero = v.iter().all(|c| c.is_zero());
    let (s, t) = if u_zero {
        (Rational::one(), Rational::zero())
    } else if v_zero {
        (Rational::zero(), Rational::one())
    } else {
        let j = u
            .iter()
            .position(|c| !c.is_zero())
            .expect("u is nonzero here");
        let lambda = &v[j] / &u[j];
        (lambda, -Rational::one())
    };
    Some(normalize_pair(s, t))
}

/// Scales a nonzero rational pair to coprime integers with the first
/// nonzero entry positive.
fn normalize_pair(s: Rational, t: Rational) -> (Rational, Rational) {
    let lcm = s.denom().lcm(t.denom());
    let mut s_int = s.numer() * (&lcm / s.denom());
    let mut t_int = t.numer() * (&lcm / t.denom());
    let g = s_int.gcd(&t_int);
    assert_ne!(g.sign(), Sign::NoSign, "pair must be nonzero");
    s_int /= &g;
    t_int /= &g;
    let flip = match (s_int.sign(), t_int.sign()) {
        (Sign::Minus, _) => true,
        (Sign::NoSign, Sign::Minus) => true,
        _ => false,
    };
    if flip {
        s_int = -s_int;
        t_int = -t_int;
    }
    (Rational::from_bigint(s_int), Rational::from_bigint(t_int))
}

/// A torus-model instance: the reference prefix in multiplicity form
/// (multiplicities summing to `n - 2`), plus the two classes.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KtQuery {
    pub prefix: Vec<(HermitianMatrix, usize)>,
    pub alpha: HermitianMatrix,
    pub beta: HermitianMatrix,
}

/// Output of [`kt_torus_verify`]: the classifier verdict, the regime it
/// auto-selected, and whether the two classes are proportional already
/// as matrices (a strictly stronger conclusion than functional
/// proportionality).
#[derive(Clone, Serialize)]
pub struct KtReport {
    #[serde(flatten)]
    pub verdict: Verdict,
    pub mode_used: Mode,
    pub matrix_proportional: bool,
    pub matrix_witness: Option<ProportionalityWitness>,
}

/// Runs the equality classifier in the flat-torus reading, where the
/// reference classes enter with multiplicities and hypotheses are part
/// of the contract: a non-PSD prefix item or `alpha` yields a
/// [`Verdict::HypothesisViolated`] report rather than an error. The
/// regime is auto-selected: `B1` when `D(omega, beta, beta) >= 0`, else
/// `B2` when `D(omega, alpha, alpha) > 0`, else `Unchecked`.
pub fn kt_torus_verify(q: &KtQuery) -> Result<KtReport> {
    let n = q.alpha.n();
    let omega = expand_prefix(&q.prefix, n)?;
    if q.beta.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: q.beta.n(),
        });
    }
    let basis = HermitianBasis::new(n);
    let alpha_coords = basis.decompose(&q.alpha)?;
    let beta_coords = basis.decompose(&q.beta)?;
    let matrix_witness = proportional_vectors(&alpha_coords, &beta_coords)
        .map(|(s0, t0)| ProportionalityWitness { s0, t0 });
    let mut violated = Vec::new();
    for (index, item) in omega.items().iter().enumerate() {
        if !is_psd(item).is_psd() {
            violated.push(format!("prefix item {index} is not semi-positive definite"));
        }
    }
    if !is_psd(&q.alpha).is_psd() {
        violated.push("alpha is not semi-positive definite".into());
    }
    if !violated.is_empty() {
        return Ok(KtReport {
            verdict: Verdict::HypothesisViolated {
                detail: violated.join("; "),
            },
            mode_used: Mode::Unchecked,
            matrix_proportional: matrix_witness.is_some(),
            matrix_witness,
        });
    }
    let dbb = omega.form(&q.beta, &q.beta)?;
    let daa = omega.form(&q.alpha, &q.alpha)?;
    let mode_used = if !dbb.is_negative() {
        Mode::B1
    } else if daa.is_positive() {
        Mode::B2
    } else {
        Mode::Unchecked
    };
    let query = EqualityQuery::new(omega, q.alpha.clone(), q.beta.clone(), mode_used)?;
    let verdict = classify_equality(&query)?;
    Ok(KtReport {
        verdict,
        mode_used,
        matrix_proportional: matrix_witness.is_some(),
        matrix_witness,
    })
}

fn expand_prefix(prefix: &[(HermitianMatrix, usize)], n: usize) -> Result<OmegaTuple> {
    if n < 2 {
        return Err(Error::MalformedTuple(
            "the torus model needs dimension at least 2".into(),
        ));
    }
    let total: usize = prefix.iter().map(|(_, mult)| mult).sum();
    if total != n - 2 {
        return Err(Error::MultiplicitySum {
            expected: n - 2,
            found: total,
        });
    }
    let mut items = Vec::with_capacity(n - 2);
    for (m, mult) in prefix {
        for _ in 0..*mult {
            items.push(m.clone());
        }
    }
    OmegaTuple::new(n, items)
}

/// The chain `s_k = D(alpha^k, beta^(n-k))` for `k = 0..n` with its
/// log-concavity and equality structure.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct SequenceReport {
    pub s: Vec<Rational>,
    /// Positions `k` in `1..n-1` where `s_k^2 = s_(k-1) * s_(k+1)`.
    pub equality_positions: Vec<usize>,
    pub log_concave_ok: bool,
    /// Equality at every interior position.
    pub full_chain: bool,
    /// Every functional `D(alpha^k, beta^(n-1-k), .)` for `k = 0..n-1`
    /// is nonzero.
    pub nondegenerate: bool,
    /// When the full chain holds with nondegeneracy, whether the end
    /// functionals of `alpha^(n-1)` and `beta^(n-1)` are proportional
    /// (the chained conclusion); `None` when the conditions are not met.
    pub end_proportionality: Option<bool>,
}

/// Computes the full `s_k` report for semi-positive `alpha`, `beta`.
pub fn sk_chain(alpha: &HermitianMatrix, beta: &HermitianMatrix) -> Result<SequenceReport> {
    let n = alpha.n();
    if beta.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: beta.n(),
        });
    }
    if n < 2 {
        return Err(Error::MalformedTuple(
            "the sequence chain needs dimension at least 2".into(),
        ));
    }
    if !is_psd(alpha).is_psd() {
        return Err(Error::HypothesisViolation(
            "alpha is not semi-positive definite".into(),
        ));
    }
    if !is_psd(beta).is_psd() {
        return Err(Error::HypothesisViolation(
            "beta is not semi-positive definite".into(),
        ));
    }
    let s: Vec<Rational> = (0..=n)
        .map(|k| {
            mixed_disc_multi(&[(alpha.clone(), k), (beta.clone(), n - k)])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut equality_positions = Vec::new();
    let mut log_concave_ok = true;
    for k in 1..n {
        let diff = &s[k].square() - &(&s[k - 1] * &s[k + 1]);
        if diff.is_zero() {
            equality_positions.push(k);
        } else if diff.is_negative() {
            log_concave_ok = false;
        }
    }
    let full_chain = equality_positions.len() == n - 1;
    let mut nondegenerate = true;
    for k in 0..n {
        let mut ms = vec![alpha.clone(); k];
        ms.extend(std::iter::repeat_with(|| beta.clone()).take(n - 1 - k));
        if functional_of_tuple(&ms)?.is_zero() {
            nondegenerate = false;
            break;
        }
    }
    let end_proportionality = if full_chain && nondegenerate {
        let f_alpha = functional_of_tuple(&vec![alpha.clone(); n - 1])?;
        let f_beta = functional_of_tuple(&vec![beta.clone(); n - 1])?;
        Some(proportional_vectors(f_alpha.coeffs(), f_beta.coeffs()).is_some())
    } else {
        None
    };
    Ok(SequenceReport {
        s,
        equality_positions,
        log_concave_ok,
        full_chain,
        nondegenerate,
        end_proportionality,
    })
}

/// A generated sharp instance: the query, its verdict, and the strictly
/// negative value `D(omega, b, b)` certifying that the equality is not
/// of the proportional kind.
#[derive(Clone, Serialize)]
pub struct CounterexampleReport {
    pub query: EqualityQuery,
    pub verdict: Verdict,
    pub b_form_value: Rational,
}

/// Builds, for any `n >= 2`, an instance where the inequality holds with
/// equality yet the functionals are not proportional: `omega` is the
/// identity tuple, `a` the rank-one projector `E_11`, and `b` the first
/// kernel vector of the stacked functionals of `a` and `I`. Both sides
/// of the inequality vanish (the `a`-functional kills `b` and
/// `D(omega, a, a) = 0`), while `D(omega, b, b) < 0` prevents any
/// proportionality. The construction is deterministic.
pub fn counterexample_generate(n: usize) -> Result<CounterexampleReport> {
    if n < 2 {
        return Err(Error::MalformedTuple(
            "counterexamples need dimension at least 2".into(),
        ));
    }
    let omega = OmegaTuple::identity(n)?;
    let mut projector = vec![Rational::zero(); n];
    projector[0] = Rational::one();
    let a = HermitianMatrix::diag(&projector);
    let f_a = functional(&omega, &a)?;
    let f_eta = functional(&omega, &HermitianMatrix::identity(n))?;
    let stacked = RatMatrix::from_rows(vec![f_a.coeffs().to_vec(), f_eta.coeffs().to_vec()]);
    let kernel = stacked.kernel_basis();
    let basis = HermitianBasis::new(n);
    let first = kernel
        .first()
        .expect("the stacked functionals have rank at most 2 < n^2");
    let b = basis.recompose(first)?;
    let b_form_value = omega.form(&b, &b)?;
    assert!(
        b_form_value.is_negative(),
        "the kernel direction must have a strictly negative self-pairing"
    );
    let query = EqualityQuery::new(omega, a, b, Mode::Unchecked)?;
    let verdict = classify_equality(&query)?;
    assert!(
        matches!(
            verdict,
            Verdict::EqualityNonProportionalOutsideHypotheses { .. }
        ),
        "the generated instance must be a non-proportional equality"
    );
    Ok(CounterexampleReport {
        query,
        verdict,
        b_form_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational;

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    fn diag(values: &[i64]) -> HermitianMatrix {
        HermitianMatrix::diag(&values.iter().map(|&v| q(v)).collect::<Vec<_>>())
    }

    fn empty_omega() -> OmegaTuple {
        OmegaTuple::new(2, vec![]).unwrap()
    }

    fn sym_unit() -> HermitianMatrix {
        HermitianMatrix::from_rows(vec![
            vec![GaussianRational::from_int(0), GaussianRational::from_int(1)],
            vec![GaussianRational::from_int(1), GaussianRational::from_int(0)],
        ])
        .unwrap()
    }

    #[test]
    fn alexandrov_rank_one_projectors() {
        let report =
            alexandrov_verify(&empty_omega(), &diag(&[1, 0]), &diag(&[0, 1])).unwrap();
        assert_eq!(report.lhs, q(1));
        assert_eq!(report.rhs, q(0));
        assert!(report.holds);
    }

    #[test]
    fn alexandrov_equal_arguments_reach_equality() {
        let a = diag(&[2, 3]);
        let report = alexandrov_verify(&empty_omega(), &a, &a).unwrap();
        assert_eq!(report.lhs, report.rhs);
        assert!(report.holds);
    }

    #[test]
    fn alexandrov_with_indefinite_second_slot() {
        let report =
            alexandrov_verify(&empty_omega(), &HermitianMatrix::identity(2), &diag(&[1, -1]))
                .unwrap();
        assert_eq!(report.lhs, q(0));
        assert_eq!(report.rhs, q(-4));
        assert!(report.holds);
    }

    #[test]
    fn alexandrov_rejects_indefinite_first_slot() {
        assert!(matches!(
            alexandrov_verify(&empty_omega(), &diag(&[1, -1]), &diag(&[1, 1])),
            Err(Error::HypothesisViolation(_))
        ));
        let omega = OmegaTuple::new(3, vec![diag(&[1, 1, -1])]).unwrap();
        assert!(matches!(
            alexandrov_verify(&omega, &HermitianMatrix::identity(3), &diag(&[1, 1, 1])),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn proportional_inputs_classify_with_integer_witness() {
        // b = (3/2) a: the relation 3 F_A - 2 F_B = 0 normalizes to
        // (3, -2).
        let omega = OmegaTuple::new(3, vec![HermitianMatrix::identity(3)]).unwrap();
        let a = diag(&[1, 2, 1]);
        let b = a.scale(&Rational::new(3, 2));
        let query = EqualityQuery::new(omega, a, b, Mode::B2).unwrap();
        match classify_equality(&query).unwrap() {
            Verdict::EqualityProportional { witness } => {
                assert_eq!(witness.s0, q(3));
                assert_eq!(witness.t0, q(-2));
            }
            _ => panic!("expected a proportional equality"),
        }
    }

    #[test]
    fn generic_pair_classifies_strict_with_positive_gap() {
        let query = EqualityQuery::new(
            empty_omega(),
            HermitianMatrix::identity(2),
            diag(&[1, 2]),
            Mode::B2,
        )
        .unwrap();
        match classify_equality(&query).unwrap() {
            Verdict::StrictInequality { gap } => assert_eq!(gap, q(1)),
            _ => panic!("expected strict inequality"),
        }
    }

    #[test]
    fn sharp_instance_classifies_outside_hypotheses_with_both_flags() {
        let query = EqualityQuery::new(
            empty_omega(),
            diag(&[1, 0]),
            sym_unit(),
            Mode::Unchecked,
        )
        .unwrap();
        match classify_equality(&query).unwrap() {
            Verdict::EqualityNonProportionalOutsideHypotheses { flags } => {
                assert_eq!(
                    flags.b1,
                    vec![HypothesisFailure::BFormNegative { value: q(-2) }]
                );
                assert_eq!(
                    flags.b2,
                    vec![HypothesisFailure::AFormNotPositive { value: q(0) }]
                );
            }
            _ => panic!("expected a non-proportional equality outside hypotheses"),
        }
    }

    #[test]
    fn reversed_inequality_without_hypotheses_is_a_negative_gap() {
        // a = diag(1,-1) and b = [[0,1],[1,0]] both have self-pairing -2
        // while pairing to 0, so lhs - rhs = -4; with a not PSD this is
        // merely a strict inequality the theorem never claimed.
        let query = EqualityQuery::new(
            empty_omega(),
            diag(&[1, -1]),
            sym_unit(),
            Mode::Unchecked,
        )
        .unwrap();
        match classify_equality(&query).unwrap() {
            Verdict::StrictInequality { gap } => assert_eq!(gap, q(-4)),
            _ => panic!("expected strict inequality"),
        }
    }

    #[test]
    fn opposite_sign_proportionality_normalizes_first_entry_positive() {
        // b = -a: F_B = -F_A, witness (1, 1).
        let a = diag(&[1, -1]);
        let b = diag(&[-1, 1]);
        let query = EqualityQuery::new(empty_omega(), a, b, Mode::Unchecked).unwrap();
        match classify_equality(&query).unwrap() {
            Verdict::EqualityProportional { witness } => {
                assert_eq!(witness.s0, q(1));
                assert_eq!(witness.t0, q(1));
            }
            _ => panic!("expected a proportional equality"),
        }
    }

    #[test]
    fn zero_functional_sides_pick_axis_witnesses() {
        assert_eq!(
            proportional_vectors(&[q(0), q(0)], &[q(1), q(2)]),
            Some((q(1), q(0)))
        );
        assert_eq!(
            proportional_vectors(&[q(1), q(2)], &[q(0), q(0)]),
            Some((q(0), q(1)))
        );
        assert_eq!(
            proportional_vectors(&[q(0), q(0)], &[q(0), q(0)]),
            Some((q(1), q(0)))
        );
        assert_eq!(proportional_vectors(&[q(1), q(0)], &[q(0), q(1)]), None);
    }

    #[test]
    fn witness_pairs_are_coprime_integers() {
        let u = [Rational::new(2, 3), Rational::new(4, 3)];
        let v = [Rational::new(1, 2), Rational::new(1, 1)];
        // v = (3/4) u: relation 3 u - 4 v = 0.
        let (s0, t0) = proportional_vectors(&u, &v).unwrap();
        assert_eq!(s0, q(3));
        assert_eq!(t0, q(-4));
    }

    #[test]
    fn torus_verify_on_proportional_kaehler_classes() {
        let alpha = diag(&[1, 2]);
        let beta = alpha.scale(&q(2));
        let report = kt_torus_verify(&KtQuery {
            prefix: vec![],
            alpha,
            beta,
        })
        .unwrap();
        assert!(matches!(
            report.verdict,
            Verdict::EqualityProportional { .. }
        ));
        assert_eq!(report.mode_used, Mode::B1);
        assert!(report.matrix_proportional);
        let w = report.matrix_witness.unwrap();
        assert_eq!((w.s0, w.t0), (q(2), q(-1)));
    }

    #[test]
    fn torus_verify_on_the_sharp_instance() {
        let report = kt_torus_verify(&KtQuery {
            prefix: vec![],
            alpha: diag(&[1, 0]),
            beta: sym_unit(),
        })
        .unwrap();
        assert!(matches!(
            report.verdict,
            Verdict::EqualityNonProportionalOutsideHypotheses { .. }
        ));
        assert_eq!(report.mode_used, Mode::Unchecked);
        assert!(!report.matrix_proportional);
        assert!(report.matrix_witness.is_none());
    }

    #[test]
    fn torus_verify_reports_hypothesis_violations_as_verdicts() {
        let report = kt_torus_verify(&KtQuery {
            prefix: vec![],
            alpha: diag(&[1, -1]),
            beta: diag(&[1, 1]),
        })
        .unwrap();
        assert!(matches!(
            report.verdict,
            Verdict::HypothesisViolated { .. }
        ));
        let report = kt_torus_verify(&KtQuery {
            prefix: vec![(diag(&[1, 1, -1]), 1)],
            alpha: HermitianMatrix::identity(3),
            beta: HermitianMatrix::identity(3),
        })
        .unwrap();
        assert!(matches!(
            report.verdict,
            Verdict::HypothesisViolated { .. }
        ));
    }

    #[test]
    fn torus_verify_selects_b2_when_beta_pairing_is_negative() {
        // beta = diag(1, -2): D(beta, beta) = 2 det = -4 < 0, while
        // D(alpha, alpha) > 0 for PD alpha.
        let report = kt_torus_verify(&KtQuery {
            prefix: vec![],
            alpha: diag(&[1, 1]),
            beta: diag(&[1, -2]),
        })
        .unwrap();
        assert_eq!(report.mode_used, Mode::B2);
        assert!(matches!(report.verdict, Verdict::StrictInequality { .. }));
    }

    #[test]
    fn torus_prefix_multiplicities_must_sum_to_n_minus_two() {
        let err = kt_torus_verify(&KtQuery {
            prefix: vec![(HermitianMatrix::identity(4), 1)],
            alpha: HermitianMatrix::identity(4),
            beta: HermitianMatrix::identity(4),
        });
        assert!(matches!(err, Err(Error::MultiplicitySum { expected: 2, found: 1 })));
    }

    #[test]
    fn sk_chain_pinned_strict_case() {
        let report = sk_chain(&HermitianMatrix::identity(2), &diag(&[1, 2])).unwrap();
        assert_eq!(report.s, vec![q(4), q(3), q(2)]);
        assert!(report.equality_positions.is_empty());
        assert!(report.log_concave_ok);
        assert!(!report.full_chain);
        assert!(report.nondegenerate);
        assert_eq!(report.end_proportionality, None);
    }

    #[test]
    fn sk_chain_on_proportional_pair_is_geometric() {
        let alpha = HermitianMatrix::identity(2);
        let beta = alpha.scale(&q(2));
        let report = sk_chain(&alpha, &beta).unwrap();
        assert_eq!(report.s, vec![q(8), q(4), q(2)]);
        assert_eq!(report.equality_positions, vec![1]);
        assert!(report.full_chain);
        assert!(report.nondegenerate);
        assert_eq!(report.end_proportionality, Some(true));
    }

    #[test]
    fn sk_chain_rank_one_pair_breaks_the_chain() {
        let report = sk_chain(&diag(&[1, 0]), &diag(&[0, 1])).unwrap();
        assert_eq!(report.s, vec![q(0), q(1), q(0)]);
        assert!(report.equality_positions.is_empty());
        assert!(report.log_concave_ok);
        assert!(!report.full_chain);
        assert!(report.nondegenerate);
    }

    #[test]
    fn sk_chain_common_kernel_pair_shares_end_functionals() {
        // Both matrices vanish on the third axis: every s_k is zero, the
        // chain is trivially full, yet the pair is not proportional. The
        // end functionals both reduce to the same rank-one functional.
        let alpha = diag(&[1, 2, 0]);
        let beta = diag(&[2, 1, 0]);
        let report = sk_chain(&alpha, &beta).unwrap();
        assert_eq!(report.s, vec![q(0); 4]);
        assert_eq!(report.equality_positions, vec![1, 2]);
        assert!(report.full_chain);
        assert!(report.nondegenerate);
        assert_eq!(report.end_proportionality, Some(true));
        let basis = HermitianBasis::new(3);
        assert!(proportional_vectors(
            &basis.decompose(&alpha).unwrap(),
            &basis.decompose(&beta).unwrap()
        )
        .is_none());
    }

    #[test]
    fn sk_chain_rejects_indefinite_inputs() {
        assert!(matches!(
            sk_chain(&diag(&[1, -1]), &HermitianMatrix::identity(2)),
            Err(Error::HypothesisViolation(_))
        ));
        assert!(matches!(
            sk_chain(&HermitianMatrix::identity(2), &diag(&[1, -1])),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn counterexample_two_dimensional_instance_is_the_pinned_one() {
        let report = counterexample_generate(2).unwrap();
        assert_eq!(report.query.a, diag(&[1, 0]));
        assert_eq!(report.query.b, sym_unit());
        assert_eq!(report.b_form_value, q(-2));
        match &report.verdict {
            Verdict::EqualityNonProportionalOutsideHypotheses { flags } => {
                assert!(!flags.b1_holds());
                assert!(!flags.b2_holds());
            }
            _ => panic!("expected the sharp verdict"),
        }
    }

    #[test]
    fn counterexample_three_dimensional_instance() {
        let report = counterexample_generate(3).unwrap();
        assert_eq!(report.query.b, diag(&[0, -1, 1]));
        assert_eq!(report.b_form_value, q(-2));
        assert!(matches!(
            report.verdict,
            Verdict::EqualityNonProportionalOutsideHypotheses { .. }
        ));
    }

    #[test]
    fn counterexample_scales_to_higher_dimensions() {
        for n in 2..=5 {
            let report = counterexample_generate(n).unwrap();
            assert!(report.b_form_value.is_negative());
            assert!(matches!(
                report.verdict,
                Verdict::EqualityNonProportionalOutsideHypotheses { .. }
            ));
        }
    }

    #[test]
    fn replacing_the_projector_by_identity_breaks_equality() {
        let report = counterexample_generate(3).unwrap();
        let query = EqualityQuery::new(
            report.query.omega.clone(),
            HermitianMatrix::identity(3),
            report.query.b.clone(),
            Mode::B2,
        )
        .unwrap();
        match classify_equality(&query).unwrap() {
            Verdict::StrictInequality { gap } => assert!(gap.is_positive()),
            _ => panic!("expected strict inequality"),
        }
    }

    #[test]
    fn classifier_tags_survive_positive_rescaling() {
        let cases: Vec<(HermitianMatrix, HermitianMatrix)> = vec![
            (HermitianMatrix::identity(2), diag(&[1, 2])),
            (diag(&[1, 0]), sym_unit()),
            (diag(&[1, 2]), diag(&[2, 4])),
        ];
        for (a, b) in cases {
            let before = classify_equality(
                &EqualityQuery::new(empty_omega(), a.clone(), b.clone(), Mode::Unchecked)
                    .unwrap(),
            )
            .unwrap();
            let after = classify_equality(
                &EqualityQuery::new(
                    empty_omega(),
                    a.scale(&Rational::new(5, 3)),
                    b.scale(&Rational::new(7, 2)),
                    Mode::Unchecked,
                )
                .unwrap(),
            )
            .unwrap();
            assert_eq!(
                std::mem::discriminant(&before),
                std::mem::discriminant(&after)
            );
        }
    }
}
