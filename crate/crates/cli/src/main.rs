//! One binary, one subcommand per operation, JSON in and out.
//!
//! Every response except `mixed-disc` is a single-line envelope
//! `{"ok": bool, "result" | "error": ...}`; `mixed-disc` prints the bare
//! rational. Exit codes: 0 computed, 1 a theorem violation was found,
//! 2 the input was rejected.

use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use hodgedisc::harness::{run_suite, GeneratorConfig, SuiteKind};
use hodgedisc::hodge::{gram, hodge_index_check, lefschetz, primitive_space, OmegaTuple};
use hodgedisc::positivity::{
    cone_gamma_membership, cone_values, is_psd, m_positivity_check, ConeQuery,
};
use hodgedisc::teissier::{
    alexandrov_verify, classify_equality, counterexample_generate, kt_torus_verify, sk_chain,
    EqualityQuery, KtQuery, Mode,
};
use hodgedisc::{mixed_disc, Error, HermitianMatrix, MatrixTuple};

#[derive(Parser)]
#[command(
    name = "hodgedisc",
    version = concat!(env!("CARGO_PKG_VERSION"), " (star-operator, D(I..I)=n!)"),
    about = "Exact mixed discriminants of Hermitian matrices and the verdicts built on them"
)]
struct Cli {
    /// Read the JSON request from a file instead of standard input.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Pretty-print the JSON response; formatting only, never values.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mixed discriminant of an n-tuple; prints the bare rational.
    MixedDisc,
    /// Gram matrix of the reference form in the canonical basis.
    Gram,
    /// Basis of the primitive space of (omega, eta).
    Primitive,
    /// Signature test of the form restricted to the primitive space.
    HodgeIndex,
    /// Split beta = c * eta + gamma with gamma primitive.
    Lefschetz,
    /// Exact semidefiniteness certificate for one Hermitian matrix.
    PsdCheck,
    /// m-positivity chain values and cone membership.
    ConeCheck,
    /// The inequality D(Omega,a,b)^2 >= D(Omega,a,a) * D(Omega,b,b).
    Alexandrov,
    /// Equality-case classification under a hypothesis regime.
    Classify {
        #[arg(long, value_enum)]
        mode: ModeArg,
    },
    /// Torus-model verification with a multiplicity prefix.
    KtVerify,
    /// The chain s_k = D(alpha^k, beta^(n-k)) and its equality structure.
    SkChain,
    /// Deterministic sharpness instance for a given dimension.
    Counterexample {
        #[arg(long)]
        n: usize,
    },
    /// Seeded batch suites over random instances.
    Fuzz {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        /// Comma-separated target ranks, cycled over trials and slots.
        #[arg(long, value_delimiter = ',')]
        rank_profile: Option<Vec<usize>>,
        /// Bound on numerators and denominators of sampled entries.
        #[arg(long)]
        entry_bound: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    B1,
    B2,
    Unchecked,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::B1 => Mode::B1,
            ModeArg::B2 => Mode::B2,
            ModeArg::Unchecked => Mode::Unchecked,
        }
    }
}

#[derive(Deserialize)]
struct SpaceRequest {
    n: usize,
    #[serde(default)]
    omega: Vec<HermitianMatrix>,
    eta: Option<HermitianMatrix>,
    beta: Option<HermitianMatrix>,
}

#[derive(Deserialize)]
struct InequalityRequest {
    n: usize,
    #[serde(default)]
    omega: Vec<HermitianMatrix>,
    a: HermitianMatrix,
    b: HermitianMatrix,
}

#[derive(Deserialize)]
struct ChainRequest {
    alpha: HermitianMatrix,
    beta: HermitianMatrix,
}

enum Output {
    Bare(String),
    Envelope { result: Value, violation: bool },
}

impl Output {
    fn result(value: Value) -> Self {
        Output::Envelope {
            result: value,
            violation: false,
        }
    }
}

enum Failure {
    Domain(Error),
    Parse(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl Failure {
    fn body(&self) -> Value {
        let (kind, message) = match self {
            Failure::Domain(e) => (error_kind(e), e.to_string()),
            Failure::Parse(m) => ("parse", m.clone()),
            Failure::Io(m) => ("io", m.clone()),
        };
        json!({"ok": false, "error": {"kind": kind, "message": message}})
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DimensionMismatch { .. } => "dimension-mismatch",
        Error::NotHermitian(_) => "not-hermitian",
        Error::MalformedTuple(_) => "malformed-tuple",
        Error::OracleCapExceeded { .. } => "oracle-cap-exceeded",
        Error::MultiplicitySum { .. } => "multiplicity-sum",
        Error::HypothesisViolation(_) => "hypothesis-violation",
        Error::PreconditionViolation(_) => "precondition-violation",
        Error::InvalidRational(_) => "invalid-rational",
        Error::UnknownSuite(_) => "unknown-suite",
        Error::Invalid(_) => "invalid",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pretty = cli.pretty;
    match run(cli) {
        Ok(Output::Bare(line)) => {
            println!("{line}");
            ExitCode::SUCCESS
        }
        Ok(Output::Envelope { result, violation }) => {
            print_json(&json!({"ok": true, "result": result}), pretty);
            if violation {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(failure) => {
            print_json(&failure.body(), pretty);
            ExitCode::from(2)
        }
    }
}

fn print_json(value: &Value, pretty: bool) {
    let text = if pretty {
        serde_json::to_string_pretty(value).expect("value serialization is infallible")
    } else {
        serde_json::to_string(value).expect("value serialization is infallible")
    };
    println!("{text}");
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Io(e.to_string()))?;
            Ok(text)
        }
    }
}

fn parse<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Parse(e.to_string()))
}

fn to_value<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report serialization is infallible")
}

fn require(
    field: Option<HermitianMatrix>,
    name: &str,
) -> Result<HermitianMatrix, Failure> {
    field.ok_or_else(|| Failure::Parse(format!("missing field `{name}`")))
}

fn run(cli: Cli) -> Result<Output, Failure> {
    match cli.command {
        Command::MixedDisc => {
            let tuple: MatrixTuple = parse(&read_input(&cli.input)?)?;
            Ok(Output::Bare(mixed_disc(&tuple).to_string()))
        }
        Command::Gram => {
            let req: SpaceRequest = parse(&read_input(&cli.input)?)?;
            let omega = OmegaTuple::new(req.n, req.omega)?;
            Ok(Output::result(to_value(&gram(&omega)?)))
        }
        Command::Primitive => {
            let req: SpaceRequest = parse(&read_input(&cli.input)?)?;
            let omega = OmegaTuple::new(req.n, req.omega)?;
            let eta = require(req.eta, "eta")?;
            Ok(Output::result(to_value(&primitive_space(&omega, &eta)?)))
        }
        Command::HodgeIndex => {
            let req: SpaceRequest = parse(&read_input(&cli.input)?)?;
            let omega = OmegaTuple::new(req.n, req.omega)?;
            let eta = require(req.eta, "eta")?;
            Ok(Output::result(to_value(&hodge_index_check(&omega, &eta)?)))
        }
        Command::Lefschetz => {
            let req: SpaceRequest = parse(&read_input(&cli.input)?)?;
            let omega = OmegaTuple::new(req.n, req.omega)?;
            let eta = require(req.eta, "eta")?;
            let beta = require(req.beta, "beta")?;
            Ok(Output::result(to_value(&lefschetz(&omega, &eta, &beta)?)))
        }
        Command::PsdCheck => {
            let matrix: HermitianMatrix = parse(&read_input(&cli.input)?)?;
            Ok(Output::result(to_value(&is_psd(&matrix))))
        }
        Command::ConeCheck => {
            let query: ConeQuery = parse(&read_input(&cli.input)?)?;
            let report = json!({
                "values": to_value(&cone_values(&query)?),
                "positivity": to_value(&m_positivity_check(&query)?),
                "membership": to_value(&cone_gamma_membership(&query)?),
            });
            Ok(Output::result(report))
        }
        Command::Alexandrov => {
            let req: InequalityRequest = parse(&read_input(&cli.input)?)?;
            let omega = OmegaTuple::new(req.n, req.omega)?;
            Ok(Output::result(to_value(&alexandrov_verify(
                &omega, &req.a, &req.b,
            )?)))
        }
        Command::Classify { mode } => {
            let req: InequalityRequest = parse(&read_input(&cli.input)?)?;
            let omega = OmegaTuple::new(req.n, req.omega)?;
            let query = EqualityQuery::new(omega, req.a, req.b, mode.into())?;
            let verdict = classify_equality(&query)?;
            Ok(Output::Envelope {
                violation: verdict.is_violation(),
                result: to_value(&verdict),
            })
        }
        Command::KtVerify => {
            let query: KtQuery = parse(&read_input(&cli.input)?)?;
            let report = kt_torus_verify(&query)?;
            Ok(Output::Envelope {
                violation: report.verdict.is_violation(),
                result: to_value(&report),
            })
        }
        Command::SkChain => {
            let req: ChainRequest = parse(&read_input(&cli.input)?)?;
            Ok(Output::result(to_value(&sk_chain(&req.alpha, &req.beta)?)))
        }
        Command::Counterexample { n } => {
            let report = counterexample_generate(n)?;
            Ok(Output::Envelope {
                violation: report.verdict.is_violation(),
                result: to_value(&report),
            })
        }
        Command::Fuzz {
            suite,
            n,
            trials,
            seed,
            rank_profile,
            entry_bound,
        } => {
            let kind: SuiteKind = suite.parse()?;
            let mut config = GeneratorConfig::new(n, seed, trials);
            if let Some(profile) = rank_profile {
                config.rank_profile = profile;
            }
            if let Some(bound) = entry_bound {
                config.entry_bound = bound;
            }
            let report = run_suite(kind, &config)?;
            Ok(Output::Envelope {
                violation: report.has_violation(),
                result: to_value(&report),
            })
        }
    }
}
