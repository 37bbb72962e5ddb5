use serde::Serialize;

use super::action::SimplicialAction;
use super::groupoid::{Cells, FiniteGroupoid};

/// Inertia groupoid `ΛG` of a finite groupoid `G`.
///
/// Objects are the loops `v` of `G` (`s(v) = t(v)`); an arrow `(v, α)` with
/// `s(α) = s(v)` runs from `v` to `α⁻¹vα`, and `(v, α)∘(w, β) = (v, αβ)`.
#[derive(Clone, Debug)]
pub struct InertiaGroupoid {
    groupoid: FiniteGroupoid,
    loops: Vec<usize>,
    loop_index: Vec<Option<usize>>,
    arrows: Vec<(usize, usize)>,
    component: Vec<usize>,
    component_count: usize,
}

/// One connected component of an inertia groupoid, or a union of them for
/// twisted sectors of an action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sector {
    /// Loop of the base groupoid representing the sector.
    pub representative: usize,
    pub label: String,
    pub objects: usize,
    pub arrows: usize,
    /// Order of the automorphism group of the representative object.
    pub isotropy: usize,
}

impl InertiaGroupoid {
    pub fn new(base: &FiniteGroupoid) -> Self {
        let loops: Vec<usize> = (0..base.arrow_count()).filter(|&a| base.source(a) == base.target(a)).collect();
        let mut loop_index = vec![None; base.arrow_count()];
        for (i, &v) in loops.iter().enumerate() {
            loop_index[v] = Some(i);
        }
        let mut arrows = Vec::new();
        let mut source = Vec::new();
        let mut target = Vec::new();
        for (i, &v) in loops.iter().enumerate() {
            for &alpha in base.arrows_from(base.source(v)) {
                let w = conjugate(base, v, alpha);
                arrows.push((i, alpha));
                source.push(i);
                target.push(loop_index[w].expect("conjugate of a loop is a loop"));
            }
        }
        let index_of = |i: usize, alpha: usize| -> usize {
            // arrows of object i are contiguous, ordered like arrows_from(source of the loop)
            let first = arrows.partition_point(|&(j, _)| j < i);
            let x = base.source(loops[i]);
            first + base.arrows_from(x).iter().position(|&b| b == alpha).expect("arrow from x")
        };
        let groupoid = FiniteGroupoid::from_structure(loops.len(), source, target, |a, b| {
            let (i, alpha) = arrows[a];
            index_of(i, base.compose(alpha, arrows[b].1).expect("composable"))
        })
        .expect("inertia groupoid satisfies the axioms");
        let obj_labels = loops.iter().map(|&v| base.arrow_label(v).to_string()).collect();
        let arr_labels = arrows
            .iter()
            .map(|&(i, alpha)| format!("[{} | {}]", base.arrow_label(loops[i]), base.arrow_label(alpha)))
            .collect();
        let groupoid = groupoid.with_labels(obj_labels, arr_labels).expect("label lengths");
        let component = groupoid.components();
        let component_count = component.iter().max().map_or(0, |m| m + 1);
        Self { groupoid, loops, loop_index, arrows, component, component_count }
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    /// Base loop of inertia object `i`.
    pub fn loop_of(&self, i: usize) -> usize {
        self.loops[i]
    }

    pub fn object_of_loop(&self, v: usize) -> Option<usize> {
        self.loop_index[v]
    }

    /// `(object, base arrow)` of inertia arrow `a`.
    pub fn arrow(&self, a: usize) -> (usize, usize) {
        self.arrows[a]
    }

    pub fn arrow_index(&self, object: usize, alpha: usize) -> Option<usize> {
        self.groupoid.arrows_from(object).iter().copied().find(|&a| self.arrows[a].1 == alpha)
    }

    pub fn component(&self, i: usize) -> usize {
        self.component[i]
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    /// Unit embedding: object `x` of the base goes to its identity loop.
    pub fn unit_object(&self, base: &FiniteGroupoid, x: usize) -> usize {
        self.loop_index[base.identity(x)].expect("identities are loops")
    }

    /// Inversion involution on objects, `v ↦ v⁻¹`.
    pub fn invert_object(&self, base: &FiniteGroupoid, i: usize) -> usize {
        self.loop_index[base.inverse(self.loops[i])].expect("inverse of a loop is a loop")
    }

    /// Inversion involution on arrows, `(v, α) ↦ (v⁻¹, α)`.
    pub fn invert_arrow(&self, base: &FiniteGroupoid, a: usize) -> usize {
        let (i, alpha) = self.arrows[a];
        self.arrow_index(self.invert_object(base, i), alpha).expect("α also starts at the inverse loop")
    }

    pub fn sectors(&self) -> Vec<Sector> {
        summarize(&self.groupoid, &self.loops, &self.component, self.component_count)
    }
}

fn conjugate(base: &FiniteGroupoid, v: usize, alpha: usize) -> usize {
    let left = base.compose(base.inverse(alpha), v).expect("α⁻¹ ends at s(v)");
    base.compose(left, alpha).expect("v ends at s(α)")
}

fn summarize(g: &FiniteGroupoid, loops: &[usize], component: &[usize], count: usize) -> Vec<Sector> {
    (0..count)
        .map(|c| {
            let members: Vec<usize> = (0..g.object_count()).filter(|&i| component[i] == c).collect();
            let isotropy = members.iter().map(|&i| g.isotropy(i).len()).min().unwrap_or(0);
            let rep = members.iter().copied().find(|&i| g.isotropy(i).len() == isotropy).unwrap_or(members[0]);
            Sector {
                representative: loops[rep],
                label: g.object_label(rep).to_string(),
                objects: members.len(),
                arrows: members.iter().map(|&i| g.arrows_from(i).len()).sum(),
                isotropy,
            }
        })
        .collect()
}

/// Twisted sectors of a simplicial action.
///
/// Components of the inertia groupoid of the translation groupoid on
/// simplices, further glued along faces: a loop `(σ, g)` is identified with
/// `(τ, g)` whenever `τ` is a face of `σ` fixed by `g`. Each sector reports
/// the smallest isotropy among its objects.
pub fn twisted_sectors(action: &SimplicialAction) -> Vec<Sector> {
    let g = FiniteGroupoid::translation(action, Cells::Simplices);
    let inertia = InertiaGroupoid::new(&g);
    let n = action.group().order();
    let space = action.space();
    let offsets: Vec<usize> = (0..=space.dim())
        .scan(0, |acc, d| {
            let o = *acc;
            *acc += space.count(d);
            Some(o)
        })
        .collect();
    let mut parent: Vec<usize> = (0..inertia.component_count).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for d in 1..=space.dim() {
        for i in 0..space.count(d) {
            let obj = offsets[d] + i;
            for x in action.stabilizer(d, i) {
                let here = inertia.object_of_loop(obj * n + x).expect("stabilizer arrow is a loop");
                for j in 0..=d {
                    let f = space.face(d, i, j);
                    if action.act(d - 1, f, x) != f {
                        continue;
                    }
                    let there = inertia.object_of_loop((offsets[d - 1] + f) * n + x).expect("loop");
                    let (a, b) = (find(&mut parent, inertia.component[here]), find(&mut parent, inertia.component[there]));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
    }
    let mut relabel = vec![usize::MAX; parent.len()];
    let mut next = 0;
    let mut component = Vec::with_capacity(inertia.groupoid.object_count());
    for i in 0..inertia.groupoid.object_count() {
        let r = find(&mut parent, inertia.component[i]);
        if relabel[r] == usize::MAX {
            relabel[r] = next;
            next += 1;
        }
        component.push(relabel[r]);
    }
    summarize(&inertia.groupoid, &inertia.loops, &component, next)
}
