//! Nerves of finite groupoids, bar complexes of finite groups, and the total
//! complex of the double complex of a simplicial action, with their cohomology.

mod bar;
mod double;
mod levels;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use bar::BarComplex;
pub use double::{CellId, DoubleComplex, TotalCell, Truncation};
pub use levels::Nerve;

use crate::error::{Error, Result};
use crate::exactalg::{cohomology_circle, cohomology_integer, with_overflow_fallback, ChainComplex, Scalar};
use crate::groupoid::{FiniteGroup, SimplicialAction};
use crate::{BigInt, Presentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    Integer,
    Circle,
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coefficients::Integer => "integer",
            Coefficients::Circle => "circle",
        })
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "integer" | "integers" | "z" => Ok(Coefficients::Integer),
            "circle" | "u1" | "q/z" => Ok(Coefficients::Circle),
            other => Err(Error::Parse(format!("unknown coefficients {other:?}"))),
        }
    }
}

pub fn complex_cohomology<T: Scalar>(
    c: &ChainComplex<T>,
    coefficients: Coefficients,
    k: usize,
) -> Result<crate::exactalg::AbelianGroupPresentation<T>> {
    match coefficients {
        Coefficients::Integer => cohomology_integer(c, k),
        Coefficients::Circle => cohomology_circle(c, k),
    }
}

fn table<T: Scalar>(c: &ChainComplex<T>, coefficients: Coefficients, max: usize) -> Result<Vec<Presentation>> {
    (0..=max).map(|k| complex_cohomology(c, coefficients, k)?.convert()).collect()
}

/// Cohomology of the normalized bar complex in degrees `0..=max`.
pub fn group_cohomology_table(g: &FiniteGroup, coefficients: Coefficients, max: usize) -> Result<Vec<Presentation>> {
    with_overflow_fallback(
        || table(BarComplex::<i64>::new(g, max)?.complex(), coefficients, max),
        || table(BarComplex::<BigInt>::new(g, max)?.complex(), coefficients, max),
    )
}

pub fn group_cohomology(g: &FiniteGroup, coefficients: Coefficients, k: usize) -> Result<Presentation> {
    let c = with_overflow_fallback(
        || complex_cohomology(BarComplex::<i64>::new(g, k)?.complex(), coefficients, k)?.convert(),
        || complex_cohomology(BarComplex::<BigInt>::new(g, k)?.complex(), coefficients, k)?.convert(),
    )?;
    Ok(c)
}

/// Cohomology of the translation groupoid of `action` in degrees `0..=max`,
/// from the total complex truncated at `truncation` (the smallest sufficient
/// one when `None`).
pub fn orbifold_cohomology_table(
    action: &SimplicialAction,
    coefficients: Coefficients,
    max: usize,
    truncation: Option<Truncation>,
) -> Result<Vec<Presentation>> {
    let t = truncation.unwrap_or_else(|| Truncation::sufficient(max, action.space().dim()));
    with_overflow_fallback(
        || table(DoubleComplex::<i64>::with_options(action, max, t, true)?.complex(), coefficients, max),
        || table(DoubleComplex::<BigInt>::with_options(action, max, t, true)?.complex(), coefficients, max),
    )
}

pub fn orbifold_cohomology(
    action: &SimplicialAction,
    coefficients: Coefficients,
    k: usize,
    truncation: Option<Truncation>,
) -> Result<Presentation> {
    let t = truncation.unwrap_or_else(|| Truncation::sufficient(k, action.space().dim()));
    with_overflow_fallback(
        || complex_cohomology(DoubleComplex::<i64>::with_options(action, k, t, true)?.complex(), coefficients, k)?.convert(),
        || complex_cohomology(DoubleComplex::<BigInt>::with_options(action, k, t, true)?.complex(), coefficients, k)?.convert(),
    )
}
