mod common;

use std::collections::BTreeSet;

use common::{rank_mod, rank_rational};
use orbigerbe::fixtures;
use orbigerbe::groupoid::{small_groups, Cells, FiniteGroup, FiniteGroupoid, InertiaGroupoid, SimplicialAction};
use orbigerbe::nerve::{group_cohomology, group_cohomology_table, orbifold_cohomology_table, Coefficients, DoubleComplex, Truncation};
use orbigerbe::Presentation;

/// Unnormalized bar complex, written out from the face formula: rows of the
/// coboundary `C^q → C^{q+1}` indexed by `(q+1)`-tuples in base `|G|`.
fn bar_coboundary(g: &FiniteGroup, q: usize) -> Vec<Vec<i64>> {
    let n = g.order();
    let decode = |mut r: usize, len: usize| -> Vec<usize> {
        let mut t = vec![0; len];
        for x in t.iter_mut().rev() {
            *x = r % n;
            r /= n;
        }
        t
    };
    let encode = |t: &[usize]| t.iter().fold(0, |acc, &x| acc * n + x);
    let cols = n.pow(q as u32);
    (0..n.pow(q as u32 + 1))
        .map(|r| {
            let t = decode(r, q + 1);
            let mut row = vec![0i64; cols];
            for i in 0..=q + 1 {
                let face: Vec<usize> = if i == 0 {
                    t[1..].to_vec()
                } else if i == q + 1 {
                    t[..q].to_vec()
                } else {
                    let mut f = t[..i - 1].to_vec();
                    f.push(g.mul(t[i - 1], t[i]));
                    f.extend_from_slice(&t[i + 1..]);
                    f
                };
                row[encode(&face)] += if i % 2 == 0 { 1 } else { -1 };
            }
            row
        })
        .collect()
}

fn p_summands(p: &Presentation, prime: i64) -> usize {
    p.torsion().iter().filter(|&&d| d % prime == 0).count()
}

#[test]
fn integer_bar_cohomology_of_z2_by_hand() {
    // normalized cochains on Z/2 are single integers; the face formula gives
    // d_q = 1 + (-1)^(q+1), so d alternates 0, 2, 0, 2, ...
    let d = |q: usize| if q % 2 == 0 { 0i64 } else { 2 };
    let classes = |k: usize| -> usize {
        // enumerate a window of cocycles and count residues modulo the image
        let cocycles: Vec<i64> = (-8..=8).filter(|x| d(k) * x == 0).collect();
        if cocycles == [0] {
            return 1;
        }
        let image = if k == 0 { 0 } else { d(k - 1) };
        if image == 0 {
            return usize::MAX;
        }
        cocycles.iter().map(|x| x.rem_euclid(image)).collect::<BTreeSet<_>>().len()
    };
    assert_eq!(classes(2), 2);
    assert_eq!(classes(3), 1);
    let z2 = FiniteGroup::cyclic(2);
    assert_eq!(group_cohomology(&z2, Coefficients::Integer, 2).unwrap().to_string(), "Z/2");
    assert_eq!(group_cohomology(&z2, Coefficients::Integer, 3).unwrap().to_string(), "0");
}

#[test]
fn universal_coefficients_on_unnormalized_bar_complexes() {
    // dim H^k(G; F_p) = free rank of H^k + #p-summands of H^k and of H^{k+1}
    for (name, g) in small_groups().into_iter().filter(|(_, g)| g.order() <= 6) {
        let table = group_cohomology_table(&g, Coefficients::Integer, 3).unwrap();
        let d: Vec<Vec<Vec<i64>>> = (0..3).map(|q| bar_coboundary(&g, q)).collect();
        for k in 0..=2 {
            let n_k = g.order().pow(k as u32);
            let free = n_k - rank_rational(&d[k]) - if k == 0 { 0 } else { rank_rational(&d[k - 1]) };
            assert_eq!(table[k].free_rank(), free, "{name} H^{k} free rank");
            for prime in [2, 3, 5] {
                let dim = n_k - rank_mod(&d[k], prime) - if k == 0 { 0 } else { rank_mod(&d[k - 1], prime) };
                assert_eq!(
                    dim,
                    free + p_summands(&table[k], prime) + p_summands(&table[k + 1], prime),
                    "{name} H^{k} mod {prime}"
                );
            }
        }
    }
}

#[test]
fn pillowcase_h1_vanishes_by_independent_elimination() {
    let a = fixtures::pillowcase();
    let dc = DoubleComplex::<i64>::with_options(&a, 1, Truncation::sufficient(1, 2), true).unwrap();
    let dense = |k: usize| -> Vec<Vec<i64>> { dc.complex().differential(k).to_dense() };
    let (d0, d1) = (dense(0), dense(1));
    let n1 = dc.rank(1);
    // no free part, and no p-torsion for small primes
    assert_eq!(rank_rational(&d0) + rank_rational(&d1), n1);
    for p in [2, 3, 5, 7] {
        assert_eq!(rank_mod(&d0, p), rank_rational(&d0), "torsion at {p}");
    }
    let t = orbifold_cohomology_table(&a, Coefficients::Integer, 1, None).unwrap();
    assert!(t[1].is_trivial());
}

#[test]
fn inertia_of_point_groupoids_by_brute_force() {
    for (name, g) in small_groups() {
        let base = FiniteGroupoid::translation(&SimplicialAction::on_point(g.clone()), Cells::GroupOnly);
        let inertia = InertiaGroupoid::new(&base);
        assert_eq!(inertia.groupoid().object_count(), g.order(), "{name}");
        // orbits of conjugation
        let mut seen = vec![false; g.order()];
        let mut classes = Vec::new();
        for x in 0..g.order() {
            if !seen[x] {
                let orbit: BTreeSet<usize> = (0..g.order()).map(|h| g.mul(g.mul(g.inv(h), x), h)).collect();
                for &y in &orbit {
                    seen[y] = true;
                }
                classes.push(orbit);
            }
        }
        let sectors = inertia.sectors();
        assert_eq!(sectors.len(), classes.len(), "{name}");
        for s in &sectors {
            let v = s.representative;
            let centralizer = (0..g.order()).filter(|&h| g.mul(v, h) == g.mul(h, v)).count();
            assert_eq!(s.isotropy, centralizer, "{name}");
            let class = classes.iter().find(|c| c.contains(&v)).unwrap();
            assert_eq!(s.objects, class.len(), "{name}");
        }
    }
}

#[test]
fn free_action_matches_the_quotient() {
    let a = fixtures::free_circle();
    assert!(a.is_free());
    let quotient = SimplicialAction::trivial(fixtures::cycle(4));
    for coefficients in [Coefficients::Integer, Coefficients::Circle] {
        let x = orbifold_cohomology_table(&a, coefficients, 2, None).unwrap();
        let y = orbifold_cohomology_table(&quotient, coefficients, 2, None).unwrap();
        assert_eq!(x, y, "{coefficients}");
    }
    let h1 = orbifold_cohomology_table(&a, Coefficients::Integer, 1, None).unwrap();
    assert_eq!(h1[1].to_string(), "Z");
}

#[test]
fn trivial_sphere_is_simplicial_cohomology() {
    let t = orbifold_cohomology_table(&fixtures::trivial_sphere(), Coefficients::Integer, 2, None).unwrap();
    let s: Vec<String> = t.iter().map(ToString::to_string).collect();
    assert_eq!(s, ["Z", "0", "Z"]);
}
