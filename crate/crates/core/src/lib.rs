//! Crystal-level combinatorics of level-zero extremal weight modules in
//! untwisted affine type A.
//!
//! The crate is organised bottom-up:
//!
//! - [`cartan`]: the affine Cartan datum of type `A_n^(1)` and exact weight
//!   arithmetic in `(Λ_0..Λ_n, δ)` coordinates.
//! - [`partitions`], [`poly`] and [`schur`]: partitions, tuples of partitions
//!   and Schur polynomials (tableau sum and Jacobi–Trudi determinant).
//! - [`crystal`]: the crystal interface, tensor products and windowed graph
//!   exploration with axiom checking.
//! - [`kr`]: column Kirillov–Reshetikhin crystals, promotion and
//!   affinization by z-grades.
//! - [`weyl`]: the Weyl group action on regular crystals, translation words
//!   and an exact extremality test.
//! - [`lab`]: the tensor `B(W')`, its component `B_0(W')`, and the Schur
//!   indexed family `s_c(z^-1) b'`.
//! - [`acceptance`]: executable checks used by the test suite and the
//!   `verify` subcommand.
//!
//! Arithmetic code is generic over an integer [`Scalar`]; the aliases below
//! fix the concrete types used by the crystal layer.

pub mod acceptance;
pub mod cartan;
pub mod crystal;
pub mod error;
pub mod kr;
pub mod lab;
pub mod partitions;
pub mod poly;
pub mod scalar;
pub mod schur;
pub mod weyl;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Weights of crystal elements. Machine integers suffice at every scale the
/// crystal layer reaches.
pub type Weight = cartan::AffineWeight<i64>;

/// Integer action matrix of a Weyl group element on weights.
pub type WeylMatrix = weyl::WeylMatrixOf<i64>;

/// Schur and elementary polynomials carry arbitrary-precision coefficients.
pub type Polynomial = poly::FormalPolynomial<num_bigint::BigInt>;

/// Realizations `s_c(z^-1) b'` as formal sums of tensor elements.
pub type Realization = lab::FormalSum<num_bigint::BigInt>;

pub use cartan::CartanDatum;
pub use crystal::{Crystal, TensorElement};
pub use kr::{AffineElement, Column};
pub use partitions::{Partition, PartitionTuple};
