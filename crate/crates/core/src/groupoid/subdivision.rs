use std::collections::BTreeSet;

use super::action::SimplicialAction;
use super::group::FiniteGroup;
use super::simplicial::SimplicialComplex;
use crate::error::{Error, Result};

/// Graded cell poset: `facets[d][i]` lists the codimension-one faces of the
/// `d`-cell `i` by id. Repeated or glued faces (Δ-complexes) are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacePoset {
    facets: Vec<Vec<Vec<usize>>>,
}

impl FacePoset {
    pub fn new(facets: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        for d in 0..facets.len() {
            for (i, f) in facets[d].iter().enumerate() {
                if d == 0 && !f.is_empty() {
                    return Err(Error::InvalidComplex(format!("vertex {i} has facets")));
                }
                if d > 0 && (f.is_empty() || f.iter().any(|&x| x >= facets[d - 1].len())) {
                    return Err(Error::InvalidComplex(format!("cell ({d}, {i}) has bad facets {f:?}")));
                }
            }
        }
        Ok(Self { facets })
    }

    pub fn of_complex(space: &SimplicialComplex) -> Self {
        let facets = (0..=space.dim())
            .map(|d| {
                (0..space.count(d))
                    .map(|i| if d == 0 { Vec::new() } else { (0..=d).map(|j| space.face(d, i, j)).collect() })
                    .collect()
            })
            .collect();
        Self { facets }
    }

    pub fn dim(&self) -> usize {
        self.facets.len().saturating_sub(1)
    }

    pub fn count(&self, d: usize) -> usize {
        self.facets.get(d).map_or(0, Vec::len)
    }

    pub fn facets(&self, d: usize, i: usize) -> &[usize] {
        &self.facets[d][i]
    }

    fn offset(&self, d: usize) -> usize {
        (0..d).map(|e| self.count(e)).sum()
    }

    /// Vertex of the subdivision standing for cell `(d, i)`; cells are
    /// numbered by dimension first, then id.
    pub fn barycenter(&self, d: usize, i: usize) -> usize {
        self.offset(d) + i
    }

    /// Order complex of the poset: one vertex per cell, one simplex per chain.
    pub fn barycentric_subdivision(&self) -> Result<SimplicialComplex> {
        let total: usize = (0..=self.dim()).map(|d| self.count(d)).sum();
        let mut is_face: Vec<Vec<bool>> = (0..=self.dim()).map(|d| vec![false; self.count(d)]).collect();
        for d in 1..=self.dim() {
            for f in &self.facets[d] {
                for &x in f {
                    is_face[d - 1][x] = true;
                }
            }
        }
        let mut flags = Vec::new();
        for d in 0..=self.dim() {
            for i in 0..self.count(d) {
                if !is_face[d][i] {
                    self.flags_below(d, i, &mut vec![self.barycenter(d, i)], &mut flags);
                }
            }
        }
        let distinct: BTreeSet<Vec<usize>> = flags.iter().map(|f| {
            let mut f = f.clone();
            f.sort_unstable();
            f
        }).collect();
        if distinct.len() != flags.len() {
            return Err(Error::InvalidComplex("distinct flags share their cells; subdivide twice".into()));
        }
        let sub = SimplicialComplex::from_facets(total, &flags)?;
        Ok(sub)
    }

    fn flags_below(&self, d: usize, i: usize, chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if d == 0 {
            out.push(chain.clone());
            return;
        }
        for &f in &self.facets[d][i] {
            chain.push(self.barycenter(d - 1, f));
            self.flags_below(d - 1, f, chain, out);
            chain.pop();
        }
    }
}

/// Right action of a finite group on a face poset by cell permutations.
#[derive(Clone, Debug)]
pub struct CellularAction {
    group: FiniteGroup,
    poset: FacePoset,
    // cell_maps[g][d][i] = (cell (d,i))·g
    cell_maps: Vec<Vec<Vec<usize>>>,
}

impl CellularAction {
    pub fn new(group: FiniteGroup, poset: FacePoset, cell_maps: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidAction(m));
        if cell_maps.len() != group.order() {
            return bad("one cell map per group element required".into());
        }
        for (g, m) in cell_maps.iter().enumerate() {
            if m.len() != poset.dim() + 1 {
                return bad(format!("cell map of {g} has the wrong number of dimensions"));
            }
            for d in 0..=poset.dim() {
                let mut seen = vec![false; poset.count(d)];
                if m[d].len() != poset.count(d)
                    || m[d].iter().any(|&x| x >= poset.count(d) || std::mem::replace(&mut seen[x], true))
                {
                    return bad(format!("element {g} does not permute the {d}-cells"));
                }
                for i in 0..poset.count(d) {
                    if d == 0 {
                        continue;
                    }
                    let mut image: Vec<usize> = poset.facets(d, i).iter().map(|&f| m[d - 1][f]).collect();
                    let mut target = poset.facets(d, m[d][i]).to_vec();
                    image.sort_unstable();
                    target.sort_unstable();
                    if image != target {
                        return bad(format!("element {g} does not respect the faces of cell ({d}, {i})"));
                    }
                }
            }
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                for d in 0..=poset.dim() {
                    if (0..poset.count(d)).any(|i| cell_maps[gh][d][i] != cell_maps[h][d][cell_maps[g][d][i]]) {
                        return bad(format!("cell maps violate the right action law on ({g}, {h})"));
                    }
                }
            }
        }
        Ok(Self { group, poset, cell_maps })
    }

    pub fn of_simplicial(action: &SimplicialAction) -> Self {
        let space = action.space();
        let cell_maps = (0..action.group().order())
            .map(|g| (0..=space.dim()).map(|d| (0..space.count(d)).map(|i| action.act(d, i, g)).collect()).collect())
            .collect();
        Self { group: action.group().clone(), poset: FacePoset::of_complex(space), cell_maps }
    }

    pub fn poset(&self) -> &FacePoset {
        &self.poset
    }

    /// Induced action on the barycentric subdivision. It always preserves the
    /// vertex order, and a stabilizer fixes its simplex pointwise.
    pub fn subdivide(&self) -> Result<SimplicialAction> {
        let space = self.poset.barycentric_subdivision()?;
        let maps = self
            .cell_maps
            .iter()
            .map(|m| {
                (0..=self.poset.dim())
                    .flat_map(|d| (0..self.poset.count(d)).map(move |i| (d, i)))
                    .map(|(d, i)| self.poset.barycenter(d, m[d][i]))
                    .collect()
            })
            .collect();
        SimplicialAction::new(self.group.clone(), space, maps)
    }
}

impl SimplicialAction {
    pub fn barycentric_subdivision(&self) -> Result<SimplicialAction> {
        CellularAction::of_simplicial(self).subdivide()
    }
}
