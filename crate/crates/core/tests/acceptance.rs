//! The release gate: one test per numbered criterion, each printing a
//! single pass or fail line (visible under `--nocapture`).

mod common;

use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::{diag, rat, sym};
use hodgedisc::harness::{
    gen_hermitian, gen_pd, gen_psd, run_suite, GeneratorConfig, SplitMix64, SuiteKind,
};
use hodgedisc::hodge::{functional, lefschetz, OmegaTuple};
use hodgedisc::positivity::{
    cone_gamma_membership, cone_values, is_psd, m_positivity_check, ConeMembership, ConeQuery,
    MPositivity,
};
use hodgedisc::teissier::{
    classify_equality, counterexample_generate, proportional_vectors, sk_chain, EqualityQuery,
    Mode, Verdict,
};
use hodgedisc::{mixed_disc, mixed_disc_multi, mixed_disc_oracle, HermitianMatrix, MatrixTuple, Rational};

fn criterion(index: usize, claim: &str, body: impl FnOnce()) {
    let start = Instant::now();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(()) => {
            let secs = start.elapsed().as_secs_f64();
            println!("criterion {index:2}: PASS ({secs:6.2}s)  {claim}");
        }
        Err(panic) => {
            println!("criterion {index:2}: FAIL  {claim}");
            resume_unwind(panic);
        }
    }
}

fn factorial(n: usize) -> Rational {
    (1..=n as i64).map(Rational::from_int).fold(Rational::one(), |acc, v| &acc * &v)
}

#[test]
fn criterion_01_oracle_equivalence() {
    criterion(
        1,
        "polarization and permutation-sum routes agree on 200 random tuples per n in 1..=4 within 60 s",
        || {
            let start = Instant::now();
            for n in 1..=4 {
                let config = GeneratorConfig::new(n, 0xACC_0001, 200);
                for trial in 0..config.trials {
                    let mut rng = SplitMix64::for_trial(&config, trial);
                    let matrices: Vec<HermitianMatrix> =
                        (0..n).map(|_| gen_hermitian(&mut rng, n, 10)).collect();
                    let tuple = MatrixTuple::new(n, matrices).unwrap();
                    assert_eq!(mixed_disc(&tuple), mixed_disc_oracle(&tuple).unwrap());
                }
            }
            let elapsed = start.elapsed();
            assert!(
                elapsed.as_secs() < 60,
                "800 dual-route evaluations took {elapsed:?}"
            );
        },
    );
}

#[test]
fn criterion_02_normalization() {
    criterion(
        2,
        "D(A,..,A) = n! det(A) on 100 random A per n in 1..=5; D(I,..,I) pinned to 1, 2, 6, 24, 120",
        || {
            let pinned = [1, 2, 6, 24, 120];
            for n in 1..=5 {
                let identity = mixed_disc_multi(&[(HermitianMatrix::identity(n), n)]).unwrap();
                assert_eq!(identity, rat(pinned[n - 1]));
                let config = GeneratorConfig::new(n, 0xACC_0002, 100);
                for trial in 0..config.trials {
                    let mut rng = SplitMix64::for_trial(&config, trial);
                    let a = gen_hermitian(&mut rng, n, 10);
                    let det = a.det();
                    assert!(det.im.is_zero());
                    let expected = &factorial(n) * &det.re;
                    assert_eq!(mixed_disc_multi(&[(a, n)]).unwrap(), expected);
                }
            }
        },
    );
}

#[test]
fn criterion_03_alexandrov_inequality() {
    criterion(
        3,
        "D(Omega,a,b)^2 >= D(Omega,a,a) D(Omega,b,b) over 1000 trials per n in 2..=4, zero violations",
        || {
            for n in 2..=4 {
                let config = GeneratorConfig::new(n, 0xACC_0003, 1000);
                let run = run_suite(SuiteKind::Alexandrov, &config).unwrap();
                assert_eq!(run.summary.total, 1000);
                assert_eq!(
                    run.summary.violations, 0,
                    "first violating trial: {:?}",
                    run.summary.first_violation
                );
            }
        },
    );
}

#[test]
fn criterion_04_hodge_index_signatures() {
    criterion(
        4,
        "positive definite data gives restricted signature (0,0,n^2-1) and full signature (1,0,n^2-1), 100 trials per n in 2..=4",
        || {
            for n in 2..=4 {
                let mut config = GeneratorConfig::new(n, 0xACC_0004, 100);
                config.entry_bound = 5;
                let run = run_suite(SuiteKind::HodgeIndex, &config).unwrap();
                assert_eq!(run.summary.total, 100);
                assert_eq!(
                    run.summary.violations, 0,
                    "first violating trial: {:?}",
                    run.summary.first_violation
                );
            }
        },
    );
}

#[test]
fn criterion_05_boundary_semi_negativity() {
    criterion(
        5,
        "semi-positive tuples of mixed ranks keep the restricted positive count at 0, 500 trials per n in 2..=4",
        || {
            for n in 2..=4 {
                let mut config = GeneratorConfig::new(n, 0xACC_0005, 500);
                config.entry_bound = 4;
                let run = run_suite(SuiteKind::SemiNegativity, &config).unwrap();
                assert_eq!(run.summary.total, 500);
                assert_eq!(
                    run.summary.violations, 0,
                    "first violating trial: {:?}",
                    run.summary.first_violation
                );
                let degenerate = run
                    .reports
                    .iter()
                    .filter(|r| r.outcome.contains("zero=") && !r.outcome.contains("zero=0 "))
                    .count();
                assert!(degenerate > 0, "no degenerate restricted forms materialized at n = {n}");
            }
        },
    );
}

#[test]
fn criterion_06_zero_eigenvector_lemma() {
    criterion(
        6,
        "every restricted null direction from criterion 5's instance stream has an identically vanishing functional",
        || {
            for n in 2..=4 {
                let mut config = GeneratorConfig::new(n, 0xACC_0005, 500);
                config.entry_bound = 4;
                let run = run_suite(SuiteKind::ZeroEigenvector, &config).unwrap();
                assert_eq!(run.summary.violations, 0);
                let nontrivial = run
                    .reports
                    .iter()
                    .filter(|r| {
                        r.outcome.starts_with("null-directions=")
                            && !r.outcome.starts_with("null-directions=0 ")
                    })
                    .count();
                let inapplicable = run
                    .reports
                    .iter()
                    .filter(|r| r.outcome.starts_with("inapplicable"))
                    .count();
                if n == 2 {
                    // With an empty reference tuple the Gram form is
                    // nondegenerate, so the restriction to the primitive
                    // space only degenerates when D(eta, eta) = 0, which
                    // is exactly the case the lemma excludes.
                    assert_eq!(nontrivial, 0);
                    assert!(inapplicable > 0, "no isotropic eta materialized at n = 2");
                } else {
                    assert!(nontrivial > 0, "no null directions materialized at n = {n}");
                }

                // The two boundary suites draw from one instance stream:
                // identical config means identical instances, hash for hash.
                let mut spot = config.clone();
                spot.trials = 60;
                let negativity = run_suite(SuiteKind::SemiNegativity, &spot).unwrap();
                for (a, b) in negativity.reports.iter().zip(&run.reports) {
                    assert_eq!(a.instance.hash, b.instance.hash);
                }
            }
        },
    );
}

#[test]
fn criterion_07_equality_soundness() {
    criterion(
        7,
        "500 equality-seeking trials per mode per n in 2..=3: every equality certified by a witness, zero theorem violations, non-PSD b exercised under B2",
        || {
            for mode in [Mode::B1, Mode::B2] {
                for n in 2..=3 {
                    let config = GeneratorConfig::new(n, 0xACC_0007, 500);
                    let mut equalities = 0usize;
                    let mut non_psd_b = 0usize;
                    for trial in 0..config.trials {
                        let mut rng = SplitMix64::for_trial(&config, trial);
                        let (omega, a) = if mode == Mode::B2 {
                            let items: Vec<HermitianMatrix> =
                                (0..n - 2).map(|_| gen_pd(&mut rng, n, 10)).collect();
                            (OmegaTuple::new(n, items).unwrap(), gen_pd(&mut rng, n, 10))
                        } else {
                            let items: Vec<HermitianMatrix> = (0..n - 2)
                                .map(|i| gen_psd(&mut rng, n, (trial + i) % n + 1, 10))
                                .collect();
                            (
                                OmegaTuple::new(n, items).unwrap(),
                                gen_psd(&mut rng, n, trial % n + 1, 10),
                            )
                        };
                        let b = if trial % 3 == 0 {
                            a.scale(&Rational::new(rng.int_in(1, 9), rng.int_in(1, 9)))
                        } else if mode == Mode::B1 {
                            gen_psd(&mut rng, n, (trial + 1) % n + 1, 10)
                        } else {
                            gen_hermitian(&mut rng, n, 10)
                        };
                        if !is_psd(&b).is_psd() {
                            non_psd_b += 1;
                        }
                        let query =
                            EqualityQuery::new(omega.clone(), a.clone(), b.clone(), mode).unwrap();
                        match classify_equality(&query).unwrap() {
                            Verdict::TheoremViolation { .. } => {
                                panic!("theorem violation at mode {mode:?}, n = {n}, trial {trial}")
                            }
                            Verdict::EqualityNonProportionalOutsideHypotheses { .. } => panic!(
                                "hypotheses hold by construction yet were reported failed at trial {trial}"
                            ),
                            Verdict::HypothesisViolated { detail } => {
                                panic!("unexpected hypothesis report: {detail}")
                            }
                            Verdict::StrictInequality { gap } => assert!(gap.is_positive()),
                            Verdict::EqualityProportional { witness } => {
                                equalities += 1;
                                assert!(!witness.s0.is_zero() || !witness.t0.is_zero());
                                let f_a = functional(&omega, &a).unwrap();
                                let f_b = functional(&omega, &b).unwrap();
                                for (ca, cb) in f_a.coeffs().iter().zip(f_b.coeffs()) {
                                    assert!(
                                        (&(&witness.s0 * ca) + &(&witness.t0 * cb)).is_zero()
                                    );
                                }
                            }
                        }
                    }
                    assert!(equalities > 0, "no equality cases at mode {mode:?}, n = {n}");
                    if mode == Mode::B2 {
                        assert!(non_psd_b > 0, "B2 never saw an indefinite b at n = {n}");
                    }
                }
            }
        },
    );
}

#[test]
fn criterion_08_sharpness_counterexamples() {
    criterion(
        8,
        "generated equality instances for n in 2..=5 are non-proportional with D(Omega,b,b) < 0 and fail both hypothesis sets; pinned n = 2 value -2",
        || {
            for n in 2..=5 {
                let report = counterexample_generate(n).unwrap();
                assert!(report.b_form_value.is_negative());
                let flags = match &report.verdict {
                    Verdict::EqualityNonProportionalOutsideHypotheses { flags } => flags,
                    _ => panic!("unexpected verdict shape at n = {n}"),
                };
                assert!(!flags.b1_holds());
                assert!(!flags.b2_holds());

                let q = &report.query;
                let dab = q.omega.form(&q.a, &q.b).unwrap();
                let daa = q.omega.form(&q.a, &q.a).unwrap();
                let dbb = q.omega.form(&q.b, &q.b).unwrap();
                assert_eq!(dab.square(), &daa * &dbb);
                assert_eq!(dbb, report.b_form_value);
                let f_a = functional(&q.omega, &q.a).unwrap();
                let f_b = functional(&q.omega, &q.b).unwrap();
                assert!(proportional_vectors(f_a.coeffs(), f_b.coeffs()).is_none());
            }

            let pinned = counterexample_generate(2).unwrap();
            assert_eq!(pinned.query.a, diag(&[1, 0]));
            assert_eq!(pinned.query.b, sym(&[&[0, 1], &[1, 0]]));
            assert_eq!(pinned.b_form_value, rat(-2));
            let trace_functional = pinned
                .query
                .omega
                .form(&HermitianMatrix::identity(2), &pinned.query.b)
                .unwrap();
            assert!(trace_functional.is_zero());
        },
    );
}

#[test]
fn criterion_09_lefschetz_decomposition() {
    criterion(
        9,
        "beta = c eta + gamma reconstructs exactly with primitive gamma over 200 trials per n in 2..=3; pinned case c = 2, gamma = diag(1,-1)",
        || {
            for n in 2..=3 {
                let config = GeneratorConfig::new(n, 0xACC_0009, 200);
                for trial in 0..config.trials {
                    let mut rng = SplitMix64::for_trial(&config, trial);
                    let items: Vec<HermitianMatrix> =
                        (0..n - 2).map(|_| gen_pd(&mut rng, n, 10)).collect();
                    let omega = OmegaTuple::new(n, items).unwrap();
                    let eta = gen_pd(&mut rng, n, 10);
                    let beta = gen_hermitian(&mut rng, n, 10);
                    let dec = lefschetz(&omega, &eta, &beta).unwrap();
                    assert_eq!(&eta.scale(&dec.coefficient) + &dec.primitive_part, beta);
                    assert!(omega.form(&eta, &dec.primitive_part).unwrap().is_zero());
                }
            }

            let omega = OmegaTuple::new(2, vec![]).unwrap();
            let dec = lefschetz(&omega, &HermitianMatrix::identity(2), &diag(&[3, 1])).unwrap();
            assert_eq!(dec.coefficient, rat(2));
            assert_eq!(dec.primitive_part, diag(&[1, -1]));
        },
    );
}

#[test]
fn criterion_10_sk_chain() {
    criterion(
        10,
        "proportional PD pairs give full equality chains with proportional end functionals; pinned strict case s = (4,3,2) with 9 > 8",
        || {
            let strict = sk_chain(&HermitianMatrix::identity(2), &diag(&[1, 2])).unwrap();
            assert_eq!(strict.s, vec![rat(4), rat(3), rat(2)]);
            assert!(&strict.s[1].square() > &(&strict.s[0] * &strict.s[2]));
            assert!(strict.log_concave_ok);
            assert!(strict.equality_positions.is_empty());
            assert!(!strict.full_chain);

            for n in 2..=4 {
                let config = GeneratorConfig::new(n, 0xACC_0010, 12);
                for trial in 0..config.trials {
                    let mut rng = SplitMix64::for_trial(&config, trial);
                    let alpha = gen_pd(&mut rng, n, 8);
                    let beta = alpha.scale(&Rational::new(rng.int_in(1, 7), rng.int_in(1, 7)));
                    let report = sk_chain(&alpha, &beta).unwrap();
                    assert!(report.log_concave_ok);
                    assert!(report.full_chain);
                    assert!(report.nondegenerate);
                    assert_eq!(report.end_proportionality, Some(true));
                    for k in 1..n {
                        assert_eq!(
                            report.s[k].square(),
                            &report.s[k - 1] * &report.s[k + 1]
                        );
                    }
                }
            }
        },
    );
}

#[test]
fn criterion_11_m_positivity() {
    criterion(
        11,
        "pinned n = 3, m = 1, alpha = diag(1,1,-1): values (2,-2), failure at k = 2, outside the cone",
        || {
            let q = ConeQuery::new(
                vec![HermitianMatrix::identity(3)],
                Some(HermitianMatrix::identity(3)),
                diag(&[1, 1, -1]),
            )
            .unwrap();
            assert_eq!(cone_values(&q).unwrap(), vec![rat(2), rat(-2)]);
            match m_positivity_check(&q).unwrap() {
                MPositivity::FailsAt { k, value } => {
                    assert_eq!(k, 2);
                    assert_eq!(value, rat(-2));
                }
                MPositivity::Positive => panic!("the pinned instance must fail"),
            }
            assert_eq!(cone_gamma_membership(&q).unwrap(), ConeMembership::Outside);
        },
    );
}

#[test]
fn criterion_12_byte_identical_determinism() {
    criterion(
        12,
        "re-running every suite with an identical config yields byte-identical JSON reports",
        || {
            for kind in SuiteKind::ALL {
                for n in 2..=3 {
                    let config = GeneratorConfig::new(n, 0xACC_0012, 12);
                    let first = run_suite(kind, &config).unwrap().to_canonical_json();
                    let second = run_suite(kind, &config).unwrap().to_canonical_json();
                    assert_eq!(first, second, "suite {kind} drifted at n = {n}");
                    assert!(!first.is_empty());
                }
            }
        },
    );
}
