//! Seeded instance generation and batch suite execution.
//!
//! Determinism is the design constraint everything here bends around:
//! each trial derives its own generator state from the suite seed and
//! the trial index alone, so serial and parallel runs produce identical
//! report streams, and serialized reports are byte-identical across
//! runs (wall-clock timings are carried in memory but excluded from
//! serialization).

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::hodge::{
    functional, gram, hodge_index_check, lefschetz, primitive_space,
    restricted_null_directions, signature_on, zero_vector_check, HodgeIndexOutcome,
    OmegaTuple, PrimitiveSubspace, Signature,
};
use crate::matrix::{HermitianBasis, HermitianMatrix};
use crate::mixed_disc::{mixed_disc, mixed_disc_oracle_with_cap, MatrixTuple};
use crate::positivity::is_psd;
use crate::scalar::{GaussianRational, Rational};
use crate::teissier::{
    classify_equality, counterexample_generate, sk_chain, EqualityQuery, Mode, Verdict,
};
use crate::Result;

/// Everything a suite needs to reproduce its instance stream.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub n: usize,
    pub seed: u64,
    /// Target ranks for generated semi-positive matrices, cycled by
    /// trial and slot position.
    pub rank_profile: Vec<usize>,
    /// Bound on numerators and denominators of sampled entries.
    pub entry_bound: u64,
    pub trials: usize,
}

impl GeneratorConfig {
    pub fn new(n: usize, seed: u64, trials: usize) -> Self {
        GeneratorConfig {
            n,
            seed,
            rank_profile: Self::default_rank_profile(n),
            entry_bound: 10,
            trials,
        }
    }

    /// Full rank twice as often as the degenerate ranks, with rank 1 and
    /// corank 1 in the mix.
    pub fn default_rank_profile(n: usize) -> Vec<usize> {
        vec![n, 1, n, n.saturating_sub(1).max(1), n]
    }

    fn rank_at(&self, position: usize) -> usize {
        if self.rank_profile.is_empty() {
            self.n
        } else {
            self.rank_profile[position % self.rank_profile.len()].min(self.n)
        }
    }
}

/// Splitmix-style 64-bit generator; the whole harness runs off this one
/// primitive.
pub struct SplitMix64 {
    state: u64,
}

/// The splitmix finalizer on its own, used to derive per-trial seeds.
pub fn mix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn for_trial(config: &GeneratorConfig, trial: usize) -> Self {
        SplitMix64::new(mix64(config.seed ^ trial as u64))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform-enough draw in `0..bound`; the modulo bias at 64 bits is
    /// irrelevant for test-instance sampling.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        self.next_u64() % bound
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

/// A rational with numerator in `[-bound, bound]` and denominator in
/// `[1, bound]`.
pub fn gen_rational(rng: &mut SplitMix64, bound: u64) -> Rational {
    let b = bound.max(1) as i64;
    let numer = rng.int_in(-b, b);
    let denom = rng.int_in(1, b);
    Rational::new(numer, denom)
}

pub fn gen_gaussian(rng: &mut SplitMix64, bound: u64) -> GaussianRational {
    let re = gen_rational(rng, bound);
    let im = gen_rational(rng, bound);
    GaussianRational::new(re, im)
}

/// An arbitrary Hermitian matrix: real diagonal, free upper triangle.
pub fn gen_hermitian(rng: &mut SplitMix64, n: usize, bound: u64) -> HermitianMatrix {
    let mut rows = vec![vec![GaussianRational::zero(); n]; n];
    for i in 0..n {
        rows[i][i] = GaussianRational::from_rational(gen_rational(rng, bound));
        for j in i + 1..n {
            let v = gen_gaussian(rng, bound);
            rows[j][i] = v.conj();
            rows[i][j] = v;
        }
    }
    HermitianMatrix::from_rows(rows).expect("mirrored triangle is Hermitian")
}

/// A semi-positive matrix of exactly the requested rank, as `L * L^H`
/// with `L` of shape `n x rank`; resamples until the rank is exact
/// (rank can only drop for special `L`, so this terminates fast).
pub fn gen_psd(rng: &mut SplitMix64, n: usize, rank: usize, bound: u64) -> HermitianMatrix {
    assert!(rank <= n, "rank exceeds dimension");
    for _ in 0..1000 {
        let l: Vec<Vec<GaussianRational>> = (0..n)
            .map(|_| (0..rank).map(|_| gen_gaussian(rng, bound)).collect())
            .collect();
        let mut rows = vec![vec![GaussianRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                rows[i][j] = (0..rank).map(|k| &l[i][k] * &l[j][k].conj()).sum();
            }
        }
        let a = HermitianMatrix::from_rows(rows).expect("Gram form is Hermitian");
        if is_psd(&a).rank() == Some(rank) {
            return a;
        }
    }
    panic!("rank-{rank} sample did not materialize in 1000 draws");
}

pub fn gen_pd(rng: &mut SplitMix64, n: usize, bound: u64) -> HermitianMatrix {
    gen_psd(rng, n, n, bound)
}

/// The ten batch suites.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SuiteKind {
    MixedDiscOracle,
    Alexandrov,
    ClassifyB1,
    ClassifyB2,
    HodgeIndex,
    SemiNegativity,
    ZeroEigenvector,
    Lefschetz,
    SkChain,
    Counterexample,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 10] = [
        SuiteKind::MixedDiscOracle,
        SuiteKind::Alexandrov,
        SuiteKind::ClassifyB1,
        SuiteKind::ClassifyB2,
        SuiteKind::HodgeIndex,
        SuiteKind::SemiNegativity,
        SuiteKind::ZeroEigenvector,
        SuiteKind::Lefschetz,
        SuiteKind::SkChain,
        SuiteKind::Counterexample,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SuiteKind::MixedDiscOracle => "mixed-disc-oracle",
            SuiteKind::Alexandrov => "alexandrov",
            SuiteKind::ClassifyB1 => "classify-b1",
            SuiteKind::ClassifyB2 => "classify-b2",
            SuiteKind::HodgeIndex => "hodge-index",
            SuiteKind::SemiNegativity => "semi-negativity",
            SuiteKind::ZeroEigenvector => "zero-eigenvector",
            SuiteKind::Lefschetz => "lefschetz",
            SuiteKind::SkChain => "sk-chain",
            SuiteKind::Counterexample => "counterexample",
        }
    }
}

impl fmt::Display for SuiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Hash-stamped description of a generated instance: enough to confirm
/// reproducibility without dumping every matrix.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSummary {
    pub hash: String,
    pub n: usize,
    /// Rank of each generated matrix in slot order; `None` marks a slot
    /// filled by an arbitrary (not rank-targeted) Hermitian sample.
    pub ranks: Vec<Option<usize>>,
}

fn instance_summary(n: usize, parts: &[(&HermitianMatrix, Option<usize>)]) -> InstanceSummary {
    let matrices: Vec<&HermitianMatrix> = parts.iter().map(|(m, _)| *m).collect();
    let json = serde_json::to_string(&matrices).expect("matrix serialization is infallible");
    let digest = Sha256::digest(json.as_bytes());
    let hash = digest[..8].iter().map(|b| format!("{b:02x}")).collect();
    InstanceSummary {
        hash,
        n,
        ranks: parts.iter().map(|(_, r)| *r).collect(),
    }
}

/// One trial's outcome. `elapsed_micros` is diagnostic only and is
/// deliberately excluded from serialization so that identical seeds
/// serialize to identical bytes.
#[derive(Clone, Serialize)]
pub struct TrialReport {
    pub trial_index: usize,
    pub instance: InstanceSummary,
    pub outcome: String,
    pub violation: bool,
    #[serde(skip)]
    pub elapsed_micros: u128,
}

#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub total: usize,
    pub violations: usize,
    pub first_violation: Option<usize>,
}

#[derive(Clone, Serialize)]
pub struct SuiteRun {
    pub suite: String,
    pub config: GeneratorConfig,
    pub reports: Vec<TrialReport>,
    pub summary: SuiteSummary,
}

impl SuiteRun {
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }

    pub fn has_violation(&self) -> bool {
        self.summary.violations > 0
    }
}

/// Runs every trial of a suite. Trials are independent and execute in
/// parallel; reports come back in trial order and are identical to a
/// serial run.
pub fn run_suite(kind: SuiteKind, config: &GeneratorConfig) -> Result<SuiteRun> {
    if config.n == 0 {
        return Err(Error::Invalid("dimension must be at least 1".into()));
    }
    if kind != SuiteKind::MixedDiscOracle && config.n < 2 {
        return Err(Error::Invalid(format!(
            "suite {kind} needs dimension at least 2"
        )));
    }
    let reports: Vec<TrialReport> = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            let start = Instant::now();
            let mut report = run_trial(kind, config, trial);
            report.elapsed_micros = start.elapsed().as_micros();
            report
        })
        .collect();
    let violations = reports.iter().filter(|r| r.violation).count();
    let first_violation = reports.iter().find(|r| r.violation).map(|r| r.trial_index);
    Ok(SuiteRun {
        suite: kind.name().to_string(),
        config: config.clone(),
        reports,
        summary: SuiteSummary {
            total: config.trials,
            violations,
            first_violation,
        },
    })
}

fn run_trial(kind: SuiteKind, config: &GeneratorConfig, trial: usize) -> TrialReport {
    let mut rng = SplitMix64::for_trial(config, trial);
    match kind {
        SuiteKind::MixedDiscOracle => oracle_trial(config, trial, &mut rng),
        SuiteKind::Alexandrov => alexandrov_trial(config, trial, &mut rng),
        SuiteKind::ClassifyB1 => classify_trial(config, trial, &mut rng, Mode::B1),
        SuiteKind::ClassifyB2 => classify_trial(config, trial, &mut rng, Mode::B2),
        SuiteKind::HodgeIndex => hodge_index_trial(config, trial, &mut rng),
        SuiteKind::SemiNegativity => boundary_trial(config, trial, &mut rng, false),
        SuiteKind::ZeroEigenvector => boundary_trial(config, trial, &mut rng, true),
        SuiteKind::Lefschetz => lefschetz_trial(config, trial, &mut rng),
        SuiteKind::SkChain => sk_chain_trial(config, trial, &mut rng),
        SuiteKind::Counterexample => counterexample_trial(config, trial),
    }
}

fn oracle_trial(config: &GeneratorConfig, trial: usize, rng: &mut SplitMix64) -> TrialReport {
    let n = config.n;
    let matrices: Vec<HermitianMatrix> =
        (0..n).map(|_| gen_hermitian(rng, n, config.entry_bound)).collect();
    let tuple = MatrixTuple::new(n, matrices).expect("generated tuple is well-formed");
    let via_polarization = mixed_disc(&tuple);
    let via_permutations =
        mixed_disc_oracle_with_cap(&tuple, n).expect("cap was set to the dimension");
    let parts: Vec<(&HermitianMatrix, Option<usize>)> =
        tuple.matrices().iter().map(|m| (m, None)).collect();
    let agree = via_polarization == via_permutations;
    TrialReport {
        trial_index: trial,
        instance: instance_summary(n, &parts),
        outcome: if agree {
            format!("agree value={via_polarization}")
        } else {
            format!("mismatch polarization={via_polarization} permutations={via_permutations}")
        },
        violation: !agree,
        elapsed_micros: 0,
    }
}

fn gen_omega(
    config: &GeneratorConfig,
    trial: usize,
    rng: &mut SplitMix64,
    ranks: &mut Vec<Option<usize>>,
) -> OmegaTuple {
    let n = config.n;
    let items: Vec<HermitianMatrix> = (0..n - 2)
        .map(|i| {
            let r = config.rank_at(trial + i);
            ranks.push(Some(r));
            gen_psd(rng, n, r, config.entry_bound)
        })
        .collect();
    OmegaTuple::new(n, items).expect("generated reference tuple is well-formed")
}

fn gen_pd_omega(config: &GeneratorConfig, rng: &mut SplitMix64) -> OmegaTuple {
    let n = config.n;
    let items: Vec<HermitianMatrix> =
        (0..n - 2).map(|_| gen_pd(rng, n, config.entry_bound)).collect();
    OmegaTuple::new(n, items).expect("generated reference tuple is well-formed")
}

fn alexandrov_trial(config: &GeneratorConfig, trial: usize, rng: &mut SplitMix64) -> TrialReport {
    let n = config.n;
    let mut ranks = Vec::new();
    let omega = gen_omega(config, trial, rng, &mut ranks);
    let a_rank = config.rank_at(trial + n);
    ranks.push(Some(a_rank));
    let a = gen_psd(rng, n, a_rank, config.entry_bound);
    let b = gen_hermitian(rng, n, config.entry_bound);
    ranks.push(None);
    let report = crate::teissier::alexandrov_verify(&omega, &a, &b)
        .expect("hypotheses hold by construction");
    let mut parts: Vec<(&HermitianMatrix, Option<usize>)> = Vec::new();
    for (item, r) in omega.items().iter().zip(&ranks) {
        parts.push((item, *r));
    }
    parts.push((&a, Some(a_rank)));
    parts.push((&b, None));
    TrialReport {
        trial_index: trial,
        instance: instance_summary(n, &parts),
        outcome: if report.holds {
            format!("holds gap={}", &report.lhs - &report.rhs)
        } else {
            format!("VIOLATION lhs={} rhs={}", report.lhs, report.rhs)
        },
        violation: !report.holds,
        elapsed_micros: 0,
    }
}

fn classify_trial(
    config: &GeneratorConfig,
    trial: usize,
    rng: &mut SplitMix64,
    mode: Mode,
) -> TrialReport {
    let n = config.n;
    let mut ranks = Vec::new();
    let omega = match mode {
        // B2 wants D(omega, a, a) > 0, which positive definite
        // references guarantee for the positive definite a below.
        Mode::B2 => {
            ranks.extend(std::iter::repeat(Some(n)).take(n - 2));
            gen_pd_omega(config, rng)
        }
        _ => gen_omega(config, trial, rng, &mut ranks),
    };
    let a = match mode {
        Mode::B2 => {
            ranks.push(Some(n));
            gen_pd(rng, n, config.entry_bound)
        }
        _ => {
            let r = config.rank_at(trial + n);
            ranks.push(Some(r));
            gen_psd(rng, n, r, config.entry_bound)
        }
    };
    // Every third trial plants an exactly proportional pair so equality
    // cases actually occur; the rest sample the mode's natural class
    // for b (semi-positive under B1, arbitrary Hermitian under B2).
    let proportional = trial % 3 == 0;
    let (b, b_rank) = if proportional {
        let scale = Rational::new(
            rng.int_in(1, config.entry_bound.max(1) as i64),
            rng.int_in(1, config.entry_bound.max(1) as i64),
        );
        (a.scale(&scale), *ranks.last().expect("a was pushed"))
    } else if mode == Mode::B1 {
        let r = config.rank_at(trial + n + 1);
        (gen_psd(rng, n, r, config.entry_bound), Some(r))
    } else {
        (gen_hermitian(rng, n, config.entry_bound), None)
    };
    ranks.push(b_rank);
    let query = EqualityQuery::new(omega, a, b, mode).expect("dimensions agree");
    let verdict = classify_equality(&query).expect("well-formed query");
    let mut parts: Vec<(&HermitianMatrix, Option<usize>)> = Vec::new();
    for (item, r) in query.omega.items().iter().zip(&ranks) {
        parts.push((item, *r));
    }
    parts.push((&query.a, ranks[n - 2]));
    parts.push((&query.b, ranks[n - 1]));
    let violation = verdict.is_violation();
    TrialReport {
        trial_index: trial,
        instance: instance_summary(n, &parts),
        outcome: describe_verdict(&verdict, proportional),
        violation,
        elapsed_micros: 0,
    }
}

fn describe_verdict(verdict: &Verdict, planted_proportional: bool) -> String {
    let plan = if planted_proportional {
        " planted=proportional"
    } else {
        ""
    };
    match verdict {
        Verdict::StrictInequality { gap } => format!("strict gap={gap}{plan}"),
        Verdict::EqualityProportional { witness } => {
            format!("equality witness=({},{}){plan}", witness.s0, witness.t0)
        }
        Verdict::EqualityNonProportionalOutsideHypotheses { .. } => {
            format!("equality-outside-hypotheses{plan}")
        }
        Verdict::HypothesisViolated { detail } => format!("hypothesis-violated: {detail}{plan}"),
        Verdict::TheoremViolation { .. } => format!("THEOREM-VIOLATION{plan}"),
    }
}

fn hodge_index_trial(config: &GeneratorConfig, trial: usize, rng: &mut SplitMix64) -> TrialReport {
    let n = config.n;
    let omega = gen_pd_omega(config, rng);
    let eta = gen_pd(rng, n, config.entry_bound);
    let report = hodge_index_check(&omega, &eta).expect("well-formed instance");
    let g = gram(&omega).expect("well-formed instance");
    let full_sig = signature_on(&g, &PrimitiveSubspace::full(n));
    let d = n * n;
    let expected_restricted = Signature {
        positive: 0,
        zero: 0,
        negative: d - 1,
    };
    let expected_full = Signature {
        positive: 1,
        zero: 0,
        negative: d - 1,
    };
    let ok = matches!(report.outcome, HodgeIndexOutcome::SatisfiesHit)
        && report.signature == expected_restricted
        && full_sig == expected_full;
    let mut parts: Vec<(&HermitianMatrix, Option<usize>)> =
        omega.items().iter().map(|m| (m, Some(n))).collect();
    parts.push((&eta, Some(n)));
    TrialReport {
        trial_index: trial,
        instance: instance_summary(n, &parts),
        outcome: if ok {
            "hit restricted=(0,0,d-1) full=(1,0,d-1)".to_string()
        } else {
            format!(
                "VIOLATION restricted=({},{},{}) full=({},{},{})",
                report.signature.positive,
                report.signature.zero,
                report.signature.negative,
                full_sig.positive,
                full_sig.zero,
                full_sig.negative
            )
        },
        violation: !ok,
        elapsed_micros: 0,
    }
}

/// Shared instance stream for the boundary suites: semi-positive
/// reference items of mixed ranks plus a semi-positive eta whose
/// functional does not vanish. The zero-eigenvector variant runs the
/// null-direction lemma on the same instances.
fn boundary_trial(
    config: &GeneratorConfig,
    trial: usize,
    rng: &mut SplitMix64,
    check_null_directions: bool,
) -> TrialReport {
    let n = config.n;
    let mut sampled = None;
    for _ in 0..1000 {
        let mut ranks = Vec::new();
        let omega = gen_omega(config, trial, rng, &mut ranks);
        let eta_rank = config.rank_at(trial + n).max(1);
        let eta = gen_psd(rng, n, eta_rank, config.entry_bound);
        if !functional(&omega, &eta)
            .expect("well-formed instance")
            .is_zero()
        {
            ranks.push(Some(eta_rank));
            sampled = Some((omega, eta, ranks));
            break;
        }
    }
    let (omega, eta, ranks) =
        sampled.expect("a nonvanishing functional did not materialize in 1000 draws");
    let g = gram(&omega).expect("well-formed instance");
    let p = primitive_space(&omega, &eta).expect("well-formed instance");
    let sig = signature_on(&g, &p);
    let mut parts: Vec<(&HermitianMatrix, Option<usize>)> = Vec::new();
    for (item, r) in omega.items().iter().zip(&ranks) {
        parts.push((item, *r));
    }
    parts.push((&eta, ranks[n - 2]));
    let instance = instance_summary(n, &parts);
    if !check_null_directions {
        let ok = sig.positive == 0;
        return TrialReport {
            trial_index: trial,
            instance,
            outcome: if ok {
                format!("semi-negative zero={} neg={}", sig.zero, sig.negative)
            } else {
                format!("VIOLATION positive-count={}", sig.positive)
            },
            violation: !ok,
            elapsed_micros: 0,
        };
    }
    if omega.form(&eta, &eta).expect("well-formed instance").is_zero() {
        return TrialReport {
            trial_index: trial,
            instance,
            outcome: "inapplicable: D(omega, eta, eta) = 0".to_string(),
            violation: false,
            elapsed_micros: 0,
        };
    }
    let nulls = restricted_null_directions(&g, &p);
    let basis = HermitianBasis::new(n);
    let mut failures = 0;
    for v in &nulls {
        let gamma = basis.recompose(v).expect("coordinates match the basis");
        let report = zero_vector_check(&omega, &eta, &gamma)
            .expect("preconditions hold for restricted null directions");
        if !report.holds {
            failures += 1;
        }
    }
    TrialReport {
        trial_index: trial,
        instance,
        outcome: if failures == 0 {
            format!("null-directions={} all-vanish", nulls.len())
        } else {
            format!("VIOLATION nonzero-functionals={failures} of {}", nulls.len())
        },
        violation: failures > 0,
        elapsed_micros: 0,
    }
}

fn lefschetz_trial(config: &GeneratorConfig, trial: usize, rng: &mut SplitMix64) -> TrialReport {
    let n = config.n;
    let omega = gen_pd_omega(config, rng);
    let eta = gen_pd(rng, n, config.entry_bound);
    let beta = gen_hermitian(rng, n, config.entry_bound);
    let dec = lefschetz(&omega, &eta, &beta).expect("positive definite eta never degenerates");
    let rebuilt = &eta.scale(&dec.coefficient) + &dec.primitive_part;
    let orthogonal = omega
        .form(&eta, &dec.primitive_part)
        .expect("well-formed instance")
        .is_zero();
    let ok = rebuilt == beta && orthogonal;
    let mut parts: Vec<(&HermitianMatrix, Option<usize>)> =
        omega.items().iter().map(|m| (m, Some(n))).collect();
    parts.push((&eta, Some(n)));
    parts.push((&beta, None));
    TrialReport {
        trial_index: trial,
        instance: instance_summary(n, &parts),
        outcome: if ok {
            format!("split c={}", dec.coefficient)
        } else {
            format!(
                "VIOLATION rebuilt={} orthogonal={orthogonal}",
                rebuilt == beta
            )
        },
        violation: !ok,
        elapsed_micros: 0,
    }
}

fn sk_chain_trial(config: &GeneratorConfig, trial: usize, rng: &mut SplitMix64) -> TrialReport {
    let n = config.n;
    let alpha_rank = config.rank_at(trial);
    let alpha = gen_psd(rng, n, alpha_rank, config.entry_bound);
    let proportional = trial % 3 == 0;
    let (beta, beta_rank) = if proportional {
        let scale = Rational::new(rng.int_in(1, config.entry_bound.max(1) as i64), 1);
        (alpha.scale(&scale), alpha_rank)
    } else {
        let r = config.rank_at(trial + 1);
        (gen_psd(rng, n, r, config.entry_bound), r)
    };
    let report = sk_chain(&alpha, &beta).expect("semi-positive by construction");
    let chain_conclusion_failed = report.end_proportionality == Some(false);
    let ok = report.log_concave_ok && !chain_conclusion_failed;
    let parts = [
        (&alpha, Some(alpha_rank)),
        (&beta, Some(beta_rank)),
    ];
    TrialReport {
        trial_index: trial,
        instance: instance_summary(n, &parts),
        outcome: if !ok {
            format!(
                "VIOLATION log-concave={} end-proportional={:?}",
                report.log_concave_ok, report.end_proportionality
            )
        } else {
            format!(
                "chain equalities={:?} full={} nondegenerate={}",
                report.equality_positions, report.full_chain, report.nondegenerate
            )
        },
        violation: !ok,
        elapsed_micros: 0,
    }
}

fn counterexample_trial(config: &GeneratorConfig, trial: usize) -> TrialReport {
    let n = config.n;
    let generated = counterexample_generate(n).expect("dimension is at least 2");
    // Beyond the generator's own first-vector instance, sweep the whole
    // kernel: every nonzero vector orthogonal to both functionals must
    // exhibit the same sharp equality.
    let omega = generated.query.omega.clone();
    let f_a = functional(&omega, &generated.query.a).expect("well-formed instance");
    let f_eta = functional(&omega, &HermitianMatrix::identity(n)).expect("well-formed instance");
    let stacked = crate::linalg::RatMatrix::from_rows(vec![
        f_a.coeffs().to_vec(),
        f_eta.coeffs().to_vec(),
    ]);
    let kernel = stacked.kernel_basis();
    let pick = trial % kernel.len();
    let basis = HermitianBasis::new(n);
    let b = basis.recompose(&kernel[pick]).expect("kernel vector matches basis");
    let b_form = omega.form(&b, &b).expect("well-formed instance");
    let query = EqualityQuery::new(omega, generated.query.a.clone(), b, Mode::Unchecked)
        .expect("dimensions agree");
    let verdict = classify_equality(&query).expect("well-formed query");
    let sharp = matches!(
        verdict,
        Verdict::EqualityNonProportionalOutsideHypotheses { .. }
    ) && b_form.is_negative();
    let generator_sharp = matches!(
        generated.verdict,
        Verdict::EqualityNonProportionalOutsideHypotheses { .. }
    );
    let ok = sharp && generator_sharp;
    let parts = [
        (&query.a, Some(1)),
        (&query.b, None),
    ];
    TrialReport {
        trial_index: trial,
        instance: instance_summary(n, &parts),
        outcome: if ok {
            format!("sharp kernel-vector={pick} b-form={b_form}")
        } else {
            format!("VIOLATION kernel-vector={pick} b-form={b_form}")
        },
        violation: !ok,
        elapsed_micros: 0,
    }
}
