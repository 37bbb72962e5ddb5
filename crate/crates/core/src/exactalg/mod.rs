//! Exact integer linear algebra: Smith normal form, cochain complexes and their
//! cohomology with integer and circle coefficients.

mod circle;
mod cohomology;
mod complex;
mod matrix;
mod presentation;
mod scalar;
mod smith;

pub use circle::CircleValue;
pub use cohomology::{
    bockstein, cohomology_circle, cohomology_integer, reduce_cocycle, reduce_integer_cocycle,
    BocksteinImage, CircleClass, CircleReducer, IntegerClass, IntegerReducer, TorsionClass,
    TorsionReducer,
};
pub use complex::{ChainComplex, Direction};
pub use matrix::IntegerMatrix;
pub use presentation::{AbelianGroupPresentation, CohomologyRecord};
pub use scalar::{with_overflow_fallback, Scalar};
pub use smith::{
    rank, smith_diagonal, smith_form, smith_normal_form, Elementary, SmithDecomposition,
    SmithForm, Transform,
};

use crate::error::Result;

/// Abelian group on which integer matrices act: integers themselves, or circle values.
pub trait ZModule<T: Scalar>: Clone {
    fn zero() -> Self;
    fn add_m(&self, other: &Self) -> Result<Self>;
    fn scale(&self, c: &T) -> Result<Self>;
    fn neg_m(&self) -> Result<Self>;
}

impl<T: Scalar> ZModule<T> for T {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }

    fn add_m(&self, other: &Self) -> Result<Self> {
        self.add_c(other)
    }

    fn scale(&self, c: &T) -> Result<Self> {
        self.mul_c(c)
    }

    fn neg_m(&self) -> Result<Self> {
        self.neg_c()
    }
}
