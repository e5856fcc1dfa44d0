//! Exact mixed discriminants of Hermitian matrices, with the linear-algebra
//! machinery needed to study when the Alexandrov inequality
//!
//! ```text
//! D(A_1, ..., A_{n-2}, a, b)^2 >= D(..., a, a) * D(..., b, b)
//! ```
//!
//! degenerates to an equality, and what that equality forces.
//!
//! Everything is computed over exact rationals (and complex numbers with
//! rational parts); there is no floating point anywhere in this crate, so
//! every comparison, kernel, and signature is exact.
//!
//! The mixed discriminant here carries the normalization in which
//! `D(A, ..., A) = n! * det(A)`, so `D(I, ..., I) = n!`. All derived
//! quantities (Gram matrices, primitive spaces, signatures, the `s_k`
//! log-concavity chain) inherit that convention.
//!
//! Module map:
//!
//! - [`scalar`]: rational and Gaussian-rational arithmetic.
//! - [`matrix`]: Hermitian matrices, the canonical real basis of the
//!   Hermitian space, exact determinants.
//! - [`linalg`]: rational row reduction, kernels, and symmetric congruence
//!   diagonalization (the exact replacement for eigenvalue computations).
//! - [`mixed_disc`]: the mixed discriminant and its independent
//!   permutation-sum oracle.
//! - [`hodge`]: Gram matrices of the discriminant form, primitive
//!   subspaces, signature tests, Lefschetz-type decomposition, and the
//!   null-direction check.
//! - [`positivity`]: exact semidefiniteness tests and positivity-cone
//!   membership.
//! - [`teissier`]: the Alexandrov inequality verifier, the equality-case
//!   classifier, the torus-model wrapper, the `s_k` chain, and the
//!   constructive sharpness counterexample.
//! - [`harness`]: seeded generators and randomized falsification suites.

pub mod error;
pub mod harness;
pub mod hodge;
pub mod linalg;
pub mod matrix;
pub mod mixed_disc;
pub mod positivity;
pub mod scalar;
pub mod teissier;

pub use error::Error;
pub use matrix::{ComplexMatrix, HermitianBasis, HermitianMatrix};
pub use mixed_disc::{mixed_disc, mixed_disc_multi, mixed_disc_oracle, MatrixTuple};
pub use scalar::{GaussianRational, Rational};

/// Convenient alias for fallible operations in this crate.
pub type Result<T> = std::result::Result<T, Error>;
