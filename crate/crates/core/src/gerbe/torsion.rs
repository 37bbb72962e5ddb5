use serde::Serialize;

use super::cocycle::GerbeCocycle;
use crate::error::{Error, Result};
use crate::exactalg::{CircleReducer, CircleValue, Scalar};
use crate::groupoid::FiniteGroup;
use crate::nerve::{BarComplex, DoubleComplex, TotalCell};

/// Largest group order accepted by [`enumerate_discrete_torsion`] by default.
pub const DISCRETE_TORSION_BOUND: usize = 32;

/// Normalized circle-valued 2-cocycle on a finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteTorsion {
    group: FiniteGroup,
    theta: Vec<Vec<CircleValue>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionClassCoords {
    pub factors: Vec<i64>,
    pub coords: Vec<i64>,
}

impl DiscreteTorsion {
    pub fn new(group: &FiniteGroup, theta: Vec<Vec<CircleValue>>) -> Result<Self> {
        let n = group.order();
        if theta.len() != n || theta.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidTorsion(format!("θ must be a {n}×{n} table")));
        }
        let e = group.identity();
        for g in 0..n {
            if !theta[e][g].is_zero() || !theta[g][e].is_zero() {
                return Err(Error::InvalidTorsion(format!("θ is not normalized at element {g}")));
            }
        }
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    let lhs = theta[g][h] + theta[group.mul(g, h)][k];
                    let rhs = theta[h][k] + theta[g][group.mul(h, k)];
                    if lhs != rhs {
                        return Err(Error::InvalidTorsion(format!("cocycle identity fails at ({g}, {h}, {k})")));
                    }
                }
            }
        }
        Ok(Self { group: group.clone(), theta })
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        let n = group.order();
        Self { group: group.clone(), theta: vec![vec![CircleValue::ZERO; n]; n] }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn value(&self, g: usize, h: usize) -> CircleValue {
        self.theta[g][h]
    }

    pub fn table(&self) -> &[Vec<CircleValue>] {
        &self.theta
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch("discrete torsions on different groups".into()));
        }
        let theta = self
            .theta
            .iter()
            .zip(&other.theta)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| *x + *y).collect())
            .collect();
        Ok(Self { group: self.group.clone(), theta })
    }

    /// `θ + δμ` for a normalized 1-cochain `μ` (`μ(e) = 0`):
    /// `(δμ)(g, h) = μ(h) − μ(gh) + μ(g)`.
    pub fn twist(&self, mu: &[CircleValue]) -> Result<Self> {
        let n = self.group.order();
        if mu.len() != n || !mu[self.group.identity()].is_zero() {
            return Err(Error::InvalidTorsion("μ must be a normalized function on the group".into()));
        }
        let theta = (0..n)
            .map(|g| (0..n).map(|h| self.theta[g][h] + mu[h] - mu[self.group.mul(g, h)] + mu[g]).collect())
            .collect();
        Self::new(&self.group, theta)
    }

    /// Bar 2-cochain on tuples of non-identity elements.
    fn bar_values(&self, bar: &BarComplex<i64>) -> Vec<CircleValue> {
        let m = self.group.order() - 1;
        (0..m * m)
            .map(|r| {
                let t = bar.tuple(2, r);
                self.theta[t[0]][t[1]]
            })
            .collect()
    }

    /// Coordinates of the class of `θ` in `H²(G; Q/Z)`.
    pub fn class(&self) -> Result<TorsionClassCoords> {
        let bar = BarComplex::<i64>::new(&self.group, 2)?;
        let reducer = CircleReducer::new(bar.complex(), 2)?;
        let c = reducer.reduce(&self.bar_values(&bar))?;
        Ok(TorsionClassCoords { factors: c.torsion.factors, coords: c.torsion.coords })
    }
}

/// One normalized representative per class of `H²(G; Q/Z)`, in lexicographic
/// order of class coordinates; the first is the trivial class.
pub fn enumerate_discrete_torsion(group: &FiniteGroup, bound: usize) -> Result<Vec<DiscreteTorsion>> {
    if group.order() > bound {
        return Err(Error::BoundExceeded { order: group.order(), bound });
    }
    let bar = BarComplex::<i64>::new(group, 2)?;
    let reducer = CircleReducer::new(bar.complex(), 2)?;
    if reducer.divisible_rank() != 0 {
        return Err(Error::InvalidTorsion("second cohomology of a finite group has a divisible part".into()));
    }
    let factors = reducer.factors();
    let n = group.order();
    let mut out = Vec::new();
    let mut coords = vec![0i64; factors.len()];
    loop {
        let z = reducer.representative(&coords, &[])?;
        let mut theta = vec![vec![CircleValue::ZERO; n]; n];
        for (r, v) in z.into_iter().enumerate() {
            let t = bar.tuple(2, r);
            theta[t[0]][t[1]] = v;
        }
        out.push(DiscreteTorsion::new(group, theta)?);
        // odometer over the product of cyclic factors, last coordinate fastest
        let mut i = factors.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            coords[i] += 1;
            if coords[i] < factors[i] {
                break;
            }
            coords[i] = 0;
        }
    }
}

/// The gerbe `(θ, 0, 0)`: `θ(g, h)` on every (vertex, `(g, h)`) cell.
pub fn torsion_to_gerbe<'a, T: Scalar>(theta: &DiscreteTorsion, base: &'a DoubleComplex<T>) -> Result<GerbeCocycle<'a, T>> {
    if base.action().group().table() != theta.group.table() {
        return Err(Error::GroupMismatch("θ and the action use different groups".into()));
    }
    let mut values = vec![CircleValue::ZERO; base.rank(2)];
    let space = base.action().space();
    for v in 0..space.vertex_count() {
        for g in 0..theta.group.order() {
            for h in 0..theta.group.order() {
                let cell = TotalCell { p: 0, simplex: v, string: vec![g, h] };
                if let Some(i) = base.index(&cell) {
                    values[i] = theta.theta[g][h];
                }
            }
        }
    }
    GerbeCocycle::new(base, values)
}
