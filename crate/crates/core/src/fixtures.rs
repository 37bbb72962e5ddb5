//! Ready-made actions used by the tests, the acceptance suite and the CLI.

use crate::groupoid::{CellularAction, FacePoset, FiniteGroup, SimplicialAction, SimplicialComplex};

/// Boundary of the tetrahedron.
pub fn sphere() -> SimplicialComplex {
    SimplicialComplex::from_facets(4, &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
        .expect("tetrahedron boundary")
}

pub fn trivial_sphere() -> SimplicialAction {
    SimplicialAction::trivial(sphere())
}

/// The 2×3 grid torus with squares split along the diagonal, as a face
/// poset, together with the cell permutation of `(x, y) ↦ (−x, −y)`.
fn grid_torus() -> (FacePoset, Vec<Vec<usize>>) {
    let (a, b) = (2usize, 3usize);
    let vert = |i: usize, j: usize| (i % a) * b + j % b;
    let h = |i: usize, j: usize| vert(i, j);
    let v = |i: usize, j: usize| a * b + vert(i, j);
    let dg = |i: usize, j: usize| 2 * a * b + vert(i, j);
    let (t1, t2) = (|i, j| vert(i, j), |i, j| a * b + vert(i, j));
    let neg = |i: usize, m: usize, s: usize| (2 * m - i % m - s) % m;

    let mut edges = vec![Vec::new(); 3 * a * b];
    let mut tris = vec![Vec::new(); 2 * a * b];
    let mut emap = vec![0; 3 * a * b];
    let mut tmap = vec![0; 2 * a * b];
    let mut vmap = vec![0; a * b];
    for i in 0..a {
        for j in 0..b {
            vmap[vert(i, j)] = vert(neg(i, a, 0), neg(j, b, 0));
            edges[h(i, j)] = vec![vert(i, j), vert(i + 1, j)];
            edges[v(i, j)] = vec![vert(i, j), vert(i, j + 1)];
            edges[dg(i, j)] = vec![vert(i, j), vert(i + 1, j + 1)];
            emap[h(i, j)] = h(neg(i, a, 1), neg(j, b, 0));
            emap[v(i, j)] = v(neg(i, a, 0), neg(j, b, 1));
            emap[dg(i, j)] = dg(neg(i, a, 1), neg(j, b, 1));
            tris[t1(i, j)] = vec![h(i, j), v(i + 1, j), dg(i, j)];
            tris[t2(i, j)] = vec![v(i, j), h(i, j + 1), dg(i, j)];
            tmap[t1(i, j)] = t2(neg(i, a, 1), neg(j, b, 1));
            tmap[t2(i, j)] = t1(neg(i, a, 1), neg(j, b, 1));
        }
    }
    let poset = FacePoset::new(vec![vec![Vec::new(); a * b], edges, tris]).expect("grid torus");
    (poset, vec![vmap, emap, tmap])
}

/// `Z/2` acting on a 36-vertex, 72-triangle torus by `(x, y) ↦ (−x, −y)`: the
/// barycentric subdivision of the split 2×3 grid. Exactly four vertices are
/// fixed.
pub fn pillowcase() -> SimplicialAction {
    let (poset, neg) = grid_torus();
    let id = (0..3).map(|d| (0..poset.count(d)).collect()).collect();
    CellularAction::new(FiniteGroup::cyclic(2), poset, vec![id, neg])
        .and_then(|a| a.subdivide())
        .expect("pillowcase action")
}

/// The same torus with the trivial group.
pub fn trivial_torus() -> SimplicialAction {
    SimplicialAction::trivial(pillowcase().space().clone())
}

/// Two copies of the pillowcase torus with `Z/2 × Z/2`: `(1,0)` acts by
/// `(x, y) ↦ (−x, −y)` on both copies and `(0,1)` swaps them.
pub fn doubled_pillowcase() -> SimplicialAction {
    let m = pillowcase();
    let n = m.space().vertex_count();
    let space = m.space().disjoint_union(m.space());
    let h = FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
    let maps = (0..4)
        .map(|e| {
            let (x, y) = (e / 2, e % 2);
            (0..2 * n).map(|w| ((w / n + y) % 2) * n + m.act_vertex(w % n, x)).collect()
        })
        .collect();
    SimplicialAction::new(h, space, maps).expect("doubled pillowcase")
}

/// Cell map and group homomorphism of the inclusion of the pillowcase into
/// the first copy of the doubled pillowcase.
pub fn pillowcase_inclusion() -> (Vec<Vec<usize>>, Vec<usize>) {
    let m = pillowcase();
    let cells = (0..=2).map(|d| (0..m.space().count(d)).collect()).collect();
    (cells, vec![0, 2])
}

/// Free `Z/2` rotation of a circle: the half-turn of the 4-cycle, subdivided
/// to an 8-cycle so that it preserves vertex order.
pub fn free_circle() -> SimplicialAction {
    SimplicialAction::new(FiniteGroup::cyclic(2), cycle(4), vec![vec![0, 1, 2, 3], vec![2, 3, 0, 1]])
        .and_then(|a| a.barycentric_subdivision())
        .expect("free circle rotation")
}

/// Boundary of an `n`-gon, `n ≥ 3`.
pub fn cycle(n: usize) -> SimplicialComplex {
    let edges: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    SimplicialComplex::from_facets(n, &edges).expect("cycle")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pillowcase_shape() {
        let p = pillowcase();
        let s = p.space();
        assert_eq!((s.count(0), s.count(1), s.count(2)), (36, 108, 72));
        assert_eq!(s.euler(), 0);
        assert!(p.is_order_preserving());
        assert!(p.is_regular());
        let fixed: Vec<(usize, usize)> = p.singular_cells();
        assert_eq!(fixed.len(), 4);
        assert!(fixed.iter().all(|&(d, _)| d == 0));
    }

    #[test]
    fn doubled_shape() {
        let d = doubled_pillowcase();
        assert_eq!(d.space().count(2), 144);
        assert!(d.is_order_preserving());
        assert_eq!(d.singular_cells().len(), 8);
    }

    #[test]
    fn free_circle_shape() {
        let c = free_circle();
        assert!(c.is_free());
        assert_eq!(c.space().count(1), 8);
    }
}
