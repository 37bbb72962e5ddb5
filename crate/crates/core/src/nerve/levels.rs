use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactalg::{ChainComplex, IntegerMatrix, Scalar};
use crate::groupoid::FiniteGroupoid;

/// Levels `0..=q_max` of the nerve of a finite groupoid.
///
/// Level 0 holds the objects (as one-element tuples), level `q ≥ 1` the
/// composable strings `(α₁, …, α_q)` with `t(αⱼ) = s(αⱼ₊₁)`. In the normalized
/// nerve strings containing an identity arrow are left out, and faces landing
/// on such strings are dropped.
#[derive(Clone, Debug)]
pub struct Nerve {
    groupoid: FiniteGroupoid,
    normalized: bool,
    levels: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl Nerve {
    pub fn new(groupoid: &FiniteGroupoid, q_max: usize, normalized: bool) -> Self {
        let g = groupoid;
        let keep = |a: usize| !(normalized && g.is_identity(a));
        let mut levels = vec![(0..g.object_count()).map(|x| vec![x]).collect::<Vec<_>>()];
        for q in 1..=q_max {
            let mut next = Vec::new();
            if q == 1 {
                next.extend((0..g.arrow_count()).filter(|&a| keep(a)).map(|a| vec![a]));
            } else {
                for s in &levels[q - 1] {
                    let end = g.target(*s.last().expect("nonempty string"));
                    for &a in g.arrows_from(end) {
                        if keep(a) {
                            let mut t = s.clone();
                            t.push(a);
                            next.push(t);
                        }
                    }
                }
            }
            levels.push(next);
        }
        let index = levels.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()).collect();
        Self { groupoid: g.clone(), normalized, levels, index }
    }

    pub fn q_max(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn level(&self, q: usize) -> &[Vec<usize>] {
        &self.levels[q]
    }

    pub fn size(&self, q: usize) -> usize {
        self.levels[q].len()
    }

    pub fn index_of(&self, q: usize, s: &[usize]) -> Option<usize> {
        self.index[q].get(s).copied()
    }

    /// `δᵢ` applied to a string of length `q ≥ 1`: `δ₀` drops the first
    /// arrow, `δ_q` the last, and `δᵢ` composes `αᵢ` with `αᵢ₊₁`. On level 1,
    /// `δ₀ α = t(α)` and `δ₁ α = s(α)`.
    pub fn face_string(&self, s: &[usize], i: usize) -> Vec<usize> {
        let g = &self.groupoid;
        let q = s.len();
        assert!(i <= q && q >= 1, "face index out of range");
        if q == 1 {
            return vec![if i == 0 { g.target(s[0]) } else { g.source(s[0]) }];
        }
        if i == 0 {
            s[1..].to_vec()
        } else if i == q {
            s[..q - 1].to_vec()
        } else {
            let mut t = s[..i - 1].to_vec();
            t.push(g.compose(s[i - 1], s[i]).expect("composable string"));
            t.extend_from_slice(&s[i + 1..]);
            t
        }
    }

    /// Id of `δᵢ` of string `j` on level `q`, or `None` when the normalized
    /// nerve drops it.
    pub fn face(&self, q: usize, j: usize, i: usize) -> Option<usize> {
        self.index_of(q - 1, &self.face_string(&self.levels[q][j], i))
    }

    /// Exhaustive check of `δᵢδⱼ = δⱼ₋₁δᵢ` for `i < j` on every level.
    pub fn check_simplicial_identities(&self) -> Result<()> {
        for q in 2..=self.q_max() {
            for s in &self.levels[q] {
                for j in 1..=q {
                    let dj = self.face_string(s, j);
                    for i in 0..j {
                        let lhs = self.face_string(&dj, i);
                        let rhs = self.face_string(&self.face_string(s, i), j - 1);
                        if lhs != rhs {
                            return Err(Error::NotAComplex { degree: q });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Cochains of the nerve: `(δf)(x) = Σᵢ (−1)ⁱ f(δᵢ x)`, degrees `0..q_max`.
    pub fn cochain_complex<T: Scalar>(&self) -> Result<ChainComplex<T>> {
        let ranks: Vec<usize> = self.levels.iter().map(Vec::len).collect();
        let mut maps = Vec::new();
        for q in 0..self.q_max() {
            let mut trip = Vec::new();
            for r in 0..ranks[q + 1] {
                for i in 0..=q + 1 {
                    if let Some(c) = self.face(q + 1, r, i) {
                        trip.push((r, c, T::from_i64_c(if i % 2 == 0 { 1 } else { -1 })?));
                    }
                }
            }
            maps.push(IntegerMatrix::from_triplets(ranks[q + 1], ranks[q], trip)?);
        }
        ChainComplex::cohomological(ranks, maps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::cohomology_integer;
    use crate::groupoid::{Cells, FiniteGroup, SimplicialAction, SimplicialComplex};

    fn point(g: FiniteGroup) -> FiniteGroupoid {
        FiniteGroupoid::translation(&SimplicialAction::on_point(g), Cells::GroupOnly)
    }

    #[test]
    fn level_sizes() {
        let n = Nerve::new(&point(FiniteGroup::cyclic(2)), 3, false);
        assert_eq!((0..4).map(|q| n.size(q)).collect::<Vec<_>>(), vec![1, 2, 4, 8]);
        let two = SimplicialAction::trivial(SimplicialComplex::from_facets(2, &[vec![0], vec![1]]).unwrap());
        let n = Nerve::new(&FiniteGroupoid::translation(&two, Cells::Vertices), 4, false);
        assert!((0..5).all(|q| n.size(q) == 2));
    }

    #[test]
    fn middle_face_multiplies() {
        let g = FiniteGroup::symmetric3();
        let n = Nerve::new(&point(g.clone()), 2, false);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(n.face_string(&[a, b], 1), vec![g.mul(a, b)]);
            }
        }
        n.check_simplicial_identities().unwrap();
    }

    #[test]
    fn normalized_and_full_agree() {
        let base = point(FiniteGroup::cyclic(3));
        let full = Nerve::new(&base, 4, false).cochain_complex::<i64>().unwrap();
        let norm = Nerve::new(&base, 4, true).cochain_complex::<i64>().unwrap();
        for k in 0..4 {
            assert_eq!(cohomology_integer(&full, k).unwrap(), cohomology_integer(&norm, k).unwrap());
        }
        assert_eq!(cohomology_integer(&norm, 2).unwrap().to_string(), "Z/3");
    }
}
