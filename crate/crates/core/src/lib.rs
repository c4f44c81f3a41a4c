//! Curves on the n-punctured torus and complexes over the gentle algebra Λ_n
//! of a cycle of n projective lines.
//!
//! Loops are reduced cyclic walks in the ribbon graph Γ; monotone loops are
//! also carried as integer loop matrices. The homotopy-category oracle in
//! [`gentle_homotopy`] is generic over an exact [`field::Field`].

pub mod bundle_sequences;
pub mod error;
pub mod field;
pub mod gentle_homotopy;
pub mod intersection_calculus;
pub mod linalg;
pub mod path_algebra;
pub mod ribbon;
pub mod surface_walks;
pub mod twist_engine;

pub use error::{Error, Result};
pub use field::{with_prime, Field, Fp, PrimeVisitor, DEFAULT_PRIME, SUPPORTED_PRIMES};

/// The default prime field, 𝔽_32003.
pub type Fp32003 = Fp<32003>;
pub type DefaultField = Fp32003;
pub type Rational = num_rational::BigRational;
