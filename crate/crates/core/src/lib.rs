//! Lefschetz properties of generic Artinian reductions of determinantal rings,
//! studied through the Stanley-Reisner complex of nonintersecting lattice paths.

pub mod artinian;
pub mod betti;
pub mod criteria;
pub mod error;
pub mod field;
pub mod grid;
pub mod linalg;
pub mod poly;
pub mod simplicial;
pub mod vertex_set;

pub use error::{Error, Result};
pub use field::{Field, FieldKind};
pub use vertex_set::VertexSet;

/// `GF(2^61 - 1)`, the default coefficient field.
pub type Fp61 = field::Fp<field::Mersenne61>;
/// `GF(2^62 - 57)`, the companion prime for cross-checks.
pub type Fp62 = field::Fp<field::Prime62>;
/// Prime field whose modulus is chosen at runtime.
pub type FpRuntime = field::Fp<field::RuntimePrime>;
/// The rationals.
pub type Rational = num_rational::BigRational;
