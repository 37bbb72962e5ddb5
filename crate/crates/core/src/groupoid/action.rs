use serde::{Deserialize, Serialize};

use super::group::FiniteGroup;
use super::simplicial::SimplicialComplex;
use crate::error::{Error, Result};

/// Right action of a finite group on a simplicial complex by vertex maps.
///
/// `vertex_maps[g][v]` is `v·g`, with `v·(gh) = (v·g)·h`. Construction checks
/// the group law and that simplices go to simplices. Whether the action
/// preserves vertex order inside every simplex is recorded separately.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ActionRepr", into = "ActionRepr")]
pub struct SimplicialAction {
    group: FiniteGroup,
    space: SimplicialComplex,
    vertex_maps: Vec<Vec<usize>>,
    // cell_maps[g][d][i] = id of (simplex i of dim d)·g
    cell_maps: Vec<Vec<Vec<usize>>>,
    ordered: bool,
}

#[derive(Serialize, Deserialize)]
struct ActionRepr {
    group: FiniteGroup,
    space: SimplicialComplex,
    vertex_maps: Vec<Vec<usize>>,
}

impl TryFrom<ActionRepr> for SimplicialAction {
    type Error = Error;

    fn try_from(r: ActionRepr) -> Result<Self> {
        SimplicialAction::new(r.group, r.space, r.vertex_maps)
    }
}

impl From<SimplicialAction> for ActionRepr {
    fn from(a: SimplicialAction) -> Self {
        ActionRepr { group: a.group, space: a.space, vertex_maps: a.vertex_maps }
    }
}

impl SimplicialAction {
    pub fn new(group: FiniteGroup, space: SimplicialComplex, vertex_maps: Vec<Vec<usize>>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidAction(m));
        let n = space.vertex_count();
        if vertex_maps.len() != group.order() {
            return bad(format!("{} vertex maps for a group of order {}", vertex_maps.len(), group.order()));
        }
        for (g, m) in vertex_maps.iter().enumerate() {
            let mut seen = vec![false; n];
            if m.len() != n || m.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
                return bad(format!("vertex map of element {g} is not a permutation"));
            }
        }
        if vertex_maps[group.identity()].iter().enumerate().any(|(i, &v)| i != v) {
            return bad("identity does not act trivially".into());
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                if (0..n).any(|v| vertex_maps[gh][v] != vertex_maps[h][vertex_maps[g][v]]) {
                    return bad(format!("vertex maps violate the right action law on ({g}, {h})"));
                }
            }
        }
        let mut ordered = true;
        let mut cell_maps = Vec::with_capacity(group.order());
        for m in &vertex_maps {
            let mut per_dim = Vec::new();
            for d in 0..=space.dim() {
                let mut ids = Vec::with_capacity(space.count(d));
                for s in space.simplices(d) {
                    let image: Vec<usize> = s.iter().map(|&v| m[v]).collect();
                    ordered &= image.windows(2).all(|w| w[0] < w[1]);
                    let mut sorted = image;
                    sorted.sort_unstable();
                    match space.index_of(&sorted) {
                        Some(i) => ids.push(i),
                        None => return bad(format!("simplex {s:?} is sent to the non-simplex {sorted:?}")),
                    }
                }
                per_dim.push(ids);
            }
            cell_maps.push(per_dim);
        }
        Ok(Self { group, space, vertex_maps, cell_maps, ordered })
    }

    pub fn trivial(space: SimplicialComplex) -> Self {
        let id = (0..space.vertex_count()).collect();
        Self::new(FiniteGroup::trivial(), space, vec![id]).expect("trivial action")
    }

    /// `G` acting on a single point.
    pub fn on_point(group: FiniteGroup) -> Self {
        let maps = vec![vec![0]; group.order()];
        Self::new(group, SimplicialComplex::point(), maps).expect("action on a point")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn space(&self) -> &SimplicialComplex {
        &self.space
    }

    pub fn vertex_maps(&self) -> &[Vec<usize>] {
        &self.vertex_maps
    }

    pub fn act_vertex(&self, v: usize, g: usize) -> usize {
        self.vertex_maps[g][v]
    }

    /// Id of `σ·g` for the `d`-simplex `σ = i`.
    pub fn act(&self, d: usize, i: usize, g: usize) -> usize {
        self.cell_maps[g][d][i]
    }

    /// True when every group element keeps the vertex order inside every simplex.
    /// Face maps then commute with the action.
    pub fn is_order_preserving(&self) -> bool {
        self.ordered
    }

    pub fn require_order_preserving(&self) -> Result<()> {
        if self.ordered {
            Ok(())
        } else {
            Err(Error::InvalidAction(
                "action reorders the vertices of some simplex; subdivide it first".into(),
            ))
        }
    }

    /// Elements fixing the `d`-simplex `i` as a set.
    pub fn stabilizer(&self, d: usize, i: usize) -> Vec<usize> {
        (0..self.group.order()).filter(|&g| self.act(d, i, g) == i).collect()
    }

    /// Every stabilizer element fixes its simplex pointwise.
    pub fn is_regular(&self) -> bool {
        (0..=self.space.dim()).all(|d| {
            (0..self.space.count(d)).all(|i| {
                self.stabilizer(d, i)
                    .into_iter()
                    .all(|g| self.space.simplex(d, i).iter().all(|&v| self.act_vertex(v, g) == v))
            })
        })
    }

    pub fn is_free(&self) -> bool {
        (0..self.space.vertex_count()).all(|v| self.group.nontrivial().all(|g| self.act_vertex(v, g) != v))
    }

    /// Cells, as `(dim, id)`, with a nontrivial stabilizer.
    pub fn singular_cells(&self) -> Vec<(usize, usize)> {
        (0..=self.space.dim())
            .flat_map(|d| (0..self.space.count(d)).map(move |i| (d, i)))
            .filter(|&(d, i)| self.stabilizer(d, i).len() > 1)
            .collect()
    }

    /// Same space and vertex maps, group elements renamed along an isomorphism
    /// `iso: other → self.group`.
    pub fn relabel(&self, other: FiniteGroup, iso: &[usize]) -> Result<Self> {
        other.check_homomorphism(&self.group, iso)?;
        let maps = iso.iter().map(|&g| self.vertex_maps[g].clone()).collect();
        Self::new(other, self.space.clone(), maps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> SimplicialComplex {
        SimplicialComplex::from_facets(4, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap()
    }

    #[test]
    fn rotation_of_square_reorders_an_edge() {
        let a = SimplicialAction::new(FiniteGroup::cyclic(2), square(), vec![vec![0, 1, 2, 3], vec![2, 3, 0, 1]]).unwrap();
        assert!(a.is_free());
        // [0,3] goes to [2,1]
        assert!(!a.is_order_preserving());
        assert!(a.require_order_preserving().is_err());
    }

    #[test]
    fn rejects_non_simplicial_maps() {
        let err = SimplicialAction::new(FiniteGroup::cyclic(2), square(), vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3]]);
        assert!(matches!(err, Err(Error::InvalidAction(_))));
        let not_hom = SimplicialAction::new(FiniteGroup::cyclic(3), SimplicialComplex::point(), vec![vec![0]; 2]);
        assert!(not_hom.is_err());
    }

    #[test]
    fn point_action() {
        let a = SimplicialAction::on_point(FiniteGroup::cyclic(3));
        assert_eq!(a.stabilizer(0, 0).len(), 3);
        assert_eq!(a.singular_cells(), vec![(0, 0)]);
        assert!(a.is_regular());
        assert!(a.is_order_preserving());
    }
}
