use std::fmt;

use serde::Serialize;

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Finitely presented abelian group `Z^free ⊕ Z/d₁ ⊕ … ⊕ Z/dₘ`, optionally
/// with `divisible` extra copies of Q/Z (which only arise for circle
/// coefficients and are reported as a flag rather than forced into a
/// presentation).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroupPresentation<T> {
    free_rank: usize,
    torsion: Vec<T>,
    divisible: usize,
}

impl<T: Scalar> AbelianGroupPresentation<T> {
    pub fn new(free_rank: usize, torsion: Vec<T>, divisible: usize) -> Result<Self> {
        if let Some(bad) = torsion.iter().find(|d| d.is_zero() || d.is_one() || d.is_negative()) {
            return Err(Error::Shape(format!("invalid invariant factor {bad}")));
        }
        if torsion.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::Shape("invariant factors do not form a divisibility chain".into()));
        }
        Ok(Self { free_rank, torsion, divisible })
    }

    pub fn trivial() -> Self {
        Self { free_rank: 0, torsion: Vec::new(), divisible: 0 }
    }

    pub fn free(rank: usize) -> Self {
        Self { free_rank: rank, torsion: Vec::new(), divisible: 0 }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[T] {
        &self.torsion
    }

    /// Number of Q/Z summands.
    pub fn divisible(&self) -> usize {
        self.divisible
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty() && self.divisible == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0 && self.divisible == 0
    }

    /// Order of a finite group; `None` when infinite.
    pub fn order(&self) -> Option<T> {
        self.is_finite()
            .then(|| self.torsion.iter().fold(T::one(), |a, d| a * d.clone()))
    }

    pub fn convert<U: Scalar>(&self) -> Result<AbelianGroupPresentation<U>> {
        Ok(AbelianGroupPresentation {
            free_rank: self.free_rank,
            torsion: self
                .torsion
                .iter()
                .map(|d| U::from_bigint(&d.to_bigint()))
                .collect::<Result<_>>()?,
            divisible: self.divisible,
        })
    }

    /// JSON-ready record for a given degree.
    pub fn record(&self, degree: usize) -> CohomologyRecord {
        CohomologyRecord {
            degree,
            free_rank: self.free_rank,
            torsion: self.torsion.iter().map(ToString::to_string).collect(),
            divisible: self.divisible,
        }
    }
}

/// One row of a cohomology table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct CohomologyRecord {
    pub degree: usize,
    pub free_rank: usize,
    pub torsion: Vec<String>,
    pub divisible: usize,
}

impl<T: Scalar> fmt::Display for AbelianGroupPresentation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        match self.divisible {
            0 => {}
            1 => parts.push("Q/Z".to_string()),
            r => parts.push(format!("(Q/Z)^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
