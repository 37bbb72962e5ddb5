use super::matrix::IntegerMatrix;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Direction in which the supplied maps point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `dₖ : Cᵏ → Cᵏ⁺¹`, matrix shape `ranks[k+1] × ranks[k]`.
    Cohomological,
    /// `∂ₖ : Cₖ → Cₖ₋₁` for `k ≥ 1`, matrix shape `ranks[k-1] × ranks[k]`.
    Homological,
}

/// Finite cochain complex of free abelian groups, stored cohomologically.
///
/// Degrees `0..ranks.len()` carry groups; `differentials[k]` maps degree `k` to
/// `k + 1`. Construction checks shapes and `d ∘ d = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex<T> {
    ranks: Vec<usize>,
    differentials: Vec<IntegerMatrix<T>>,
}

impl<T: Scalar> ChainComplex<T> {
    pub fn new(direction: Direction, ranks: Vec<usize>, maps: Vec<IntegerMatrix<T>>) -> Result<Self> {
        let differentials = match direction {
            Direction::Cohomological => maps,
            Direction::Homological => maps.iter().map(IntegerMatrix::transpose).collect(),
        };
        Self::cohomological(ranks, differentials)
    }

    pub fn cohomological(ranks: Vec<usize>, differentials: Vec<IntegerMatrix<T>>) -> Result<Self> {
        if ranks.is_empty() || differentials.len() + 1 != ranks.len() {
            return Err(Error::Shape(format!(
                "{} ranks need {} differentials, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                differentials.len()
            )));
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.shape() != (ranks[k + 1], ranks[k]) {
                return Err(Error::Shape(format!(
                    "differential {k} has shape {:?}, expected {:?}",
                    d.shape(),
                    (ranks[k + 1], ranks[k])
                )));
            }
        }
        let c = Self { ranks, differentials };
        c.check_square_zero()?;
        Ok(c)
    }

    fn check_square_zero(&self) -> Result<()> {
        for (k, w) in self.differentials.windows(2).enumerate() {
            if !w[1].mul(&w[0])?.is_zero() {
                return Err(Error::NotAComplex { degree: k });
            }
        }
        Ok(())
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks[k]
    }

    pub fn differentials(&self) -> &[IntegerMatrix<T>] {
        &self.differentials
    }

    pub fn differential(&self, k: usize) -> &IntegerMatrix<T> {
        &self.differentials[k]
    }

    /// Highest degree whose cohomology is determined by the stored maps.
    pub fn top_degree(&self) -> Option<usize> {
        self.differentials.len().checked_sub(1)
    }

    pub fn check_degree(&self, k: usize) -> Result<()> {
        match self.top_degree() {
            Some(top) if k <= top => Ok(()),
            top => Err(Error::DegreeOutOfRange { degree: k, lo: 0, hi: top.unwrap_or(0) }),
        }
    }

    pub fn convert<U: Scalar>(&self) -> Result<ChainComplex<U>> {
        Ok(ChainComplex {
            ranks: self.ranks.clone(),
            differentials: self.differentials.iter().map(IntegerMatrix::convert).collect::<Result<_>>()?,
        })
    }

    /// The zero map out of degree `k - 1` (an empty map when `k = 0`).
    pub(crate) fn incoming(&self, k: usize) -> IntegerMatrix<T> {
        if k == 0 {
            IntegerMatrix::zeros(self.ranks[0], 0)
        } else {
            self.differentials[k - 1].clone()
        }
    }
}
