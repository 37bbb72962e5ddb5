//! Finite orbifold groupoids, their classifying-space cohomology, and flat
//! gerbes with band U(1), all in exact arithmetic.
//!
//! The circle group is modelled by [`CircleValue`] (Q/Z). All integer linear
//! algebra is generic over [`Scalar`]; the aliases below fix the common
//! instantiations.

pub mod error;
pub mod exactalg;
pub mod fixtures;
pub mod gerbe;
pub mod groupoid;
pub mod nerve;

pub use error::{Error, Result};
pub use exactalg::{CircleValue, Scalar};

/// Fixed-width integers; arithmetic reports overflow instead of wrapping.
pub type SmallInt = i64;
/// Arbitrary precision integers.
pub type BigInt = num_bigint::BigInt;

pub type Matrix = exactalg::IntegerMatrix<SmallInt>;
pub type BigMatrix = exactalg::IntegerMatrix<BigInt>;
pub type Complex = exactalg::ChainComplex<SmallInt>;
pub type BigComplex = exactalg::ChainComplex<BigInt>;
pub type Presentation = exactalg::AbelianGroupPresentation<SmallInt>;
