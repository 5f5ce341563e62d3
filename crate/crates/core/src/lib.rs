//! Exact constructions and verifiers for rational solutions of the
//! Yang–Baxter equation.
//!
//! All arithmetic is exact. The math is generic over the entry ring
//! ([`Ring`]) and ground field ([`Field`]); the aliases below fix the two
//! fields the library uses in practice, the rationals and `Q(i, √2)`.

pub mod error;
pub mod frobenius;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod solutions;
pub mod spectral;
pub mod spin_chain;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{Matrix, Solution};
pub use poly::{Poly, Var};
pub use scalar::{q, Ext, Field, Rational, Ring};
pub use spectral::SpectralRMatrix;
pub use tensor::{LegPair, TensorMatrix};
pub use verify::VerificationReport;

/// The field `Q(i, √2)`.
pub type QExt = Ext<Rational>;

/// Rational tensor matrix.
pub type QTensor = TensorMatrix<Rational>;
/// Tensor matrix over `Q(i, √2)`.
pub type QExtTensor = TensorMatrix<QExt>;
/// Rational polynomial.
pub type QPoly = Poly<Rational>;
/// Tensor matrix with rational polynomial entries.
pub type QPolyTensor = TensorMatrix<QPoly>;
