use std::collections::HashMap;

use super::action::SimplicialAction;
use crate::error::{Error, Result};

/// Finite groupoid with explicit structure maps.
///
/// Composition is written in diagrammatic order: `compose(a, b)` is defined
/// when `target(a) = source(b)` and runs from `source(a)` to `target(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    objects: usize,
    source: Vec<usize>,
    target: Vec<usize>,
    identity: Vec<usize>,
    inverse: Vec<usize>,
    arrows_from: Vec<Vec<usize>>,
    // position of each arrow inside arrows_from[source]
    position: Vec<usize>,
    // comp[a][position(b)] = compose(a, b)
    comp: Vec<Vec<usize>>,
    object_labels: Vec<String>,
    arrow_labels: Vec<String>,
}

/// Which cells of a simplicial action become objects of its translation groupoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cells {
    Vertices,
    Simplices,
    /// A single object, giving `[*/G]`.
    GroupOnly,
}

impl FiniteGroupoid {
    /// Builds the structure tables from `compose` (called only on composable
    /// pairs), derives identities and inverses, and audits every axiom.
    pub fn from_structure(
        objects: usize,
        source: Vec<usize>,
        target: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidGroupoid(m));
        let n = source.len();
        if target.len() != n {
            return bad("source and target tables differ in length".into());
        }
        if source.iter().chain(&target).any(|&x| x >= objects) {
            return bad("arrow endpoint out of range".into());
        }
        let mut arrows_from = vec![Vec::new(); objects];
        let mut position = vec![0; n];
        for a in 0..n {
            position[a] = arrows_from[source[a]].len();
            arrows_from[source[a]].push(a);
        }
        let mut comp = Vec::with_capacity(n);
        for a in 0..n {
            let row: Vec<usize> = arrows_from[target[a]].iter().map(|&b| compose(a, b)).collect();
            for (&b, &c) in arrows_from[target[a]].iter().zip(&row) {
                if c >= n || source[c] != source[a] || target[c] != target[b] {
                    return bad(format!("composite of {a} and {b} has the wrong endpoints"));
                }
            }
            comp.push(row);
        }
        let lookup = |a: usize, b: usize| comp[a][position[b]];
        let mut identity = Vec::with_capacity(objects);
        for x in 0..objects {
            let e = arrows_from[x].iter().copied().find(|&e| {
                target[e] == x
                    && arrows_from[x].iter().all(|&b| lookup(e, b) == b)
                    && (0..n).filter(|&a| target[a] == x).all(|a| lookup(a, e) == a)
            });
            match e {
                Some(e) => identity.push(e),
                None => return bad(format!("object {x} has no identity arrow")),
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let i = arrows_from[target[a]]
                .iter()
                .copied()
                .find(|&b| target[b] == source[a] && lookup(a, b) == identity[source[a]] && lookup(b, a) == identity[target[a]]);
            match i {
                Some(i) => inverse.push(i),
                None => return bad(format!("arrow {a} has no inverse")),
            }
        }
        for a in 0..n {
            for &b in &arrows_from[target[a]] {
                let ab = lookup(a, b);
                for &c in &arrows_from[target[b]] {
                    if lookup(ab, c) != lookup(a, lookup(b, c)) {
                        return bad(format!("associativity fails on ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(Self {
            objects,
            source,
            target,
            identity,
            inverse,
            arrows_from,
            position,
            comp,
            object_labels: (0..objects).map(|x| x.to_string()).collect(),
            arrow_labels: (0..n).map(|a| a.to_string()).collect(),
        })
    }

    pub fn with_labels(mut self, objects: Vec<String>, arrows: Vec<String>) -> Result<Self> {
        if objects.len() != self.objects || arrows.len() != self.arrow_count() {
            return Err(Error::InvalidGroupoid("label tables have the wrong length".into()));
        }
        self.object_labels = objects;
        self.arrow_labels = arrows;
        Ok(self)
    }

    pub fn empty() -> Self {
        Self::from_structure(0, Vec::new(), Vec::new(), |_, _| unreachable!()).expect("empty groupoid")
    }

    /// Translation groupoid: arrows `(m, g)` from `m` to `m·g`, composed by
    /// `(m, g)∘(m·g, h) = (m, gh)`. Arrow `(m, g)` has index `m·|G| + g`, where
    /// `m` counts cells in dimension-then-id order.
    pub fn translation(action: &SimplicialAction, on: Cells) -> Self {
        let g = action.group();
        let n = g.order();
        let space = action.space();
        let cells: Vec<(usize, usize)> = match on {
            Cells::GroupOnly => vec![(usize::MAX, 0)],
            Cells::Vertices => (0..space.vertex_count()).map(|v| (0, v)).collect(),
            Cells::Simplices => {
                (0..=space.dim()).flat_map(|d| (0..space.count(d)).map(move |i| (d, i))).collect()
            }
        };
        let index: HashMap<(usize, usize), usize> = cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let act = |k: usize, x: usize| -> usize {
            let (d, i) = cells[k];
            if d == usize::MAX {
                k
            } else {
                index[&(d, action.act(d, i, x))]
            }
        };
        let arrows = cells.len() * n;
        let source: Vec<usize> = (0..arrows).map(|a| a / n).collect();
        let target: Vec<usize> = (0..arrows).map(|a| act(a / n, a % n)).collect();
        let object_labels: Vec<String> = cells
            .iter()
            .map(|&(d, i)| if d == usize::MAX { "*".to_string() } else { format!("{:?}", space.simplex(d, i)) })
            .collect();
        let arrow_labels = (0..arrows).map(|a| format!("({}, {})", object_labels[a / n], g.label(a % n))).collect();
        Self::from_structure(cells.len(), source, target, |a, b| (a / n) * n + g.mul(a % n, b % n))
            .expect("translation groupoid satisfies the axioms")
            .with_labels(object_labels, arrow_labels)
            .expect("label lengths")
    }

    /// Coproduct; objects and arrows of `other` come after those of `self`.
    pub fn disjoint_union(&self, other: &FiniteGroupoid) -> Self {
        let (no, na) = (self.objects, self.arrow_count());
        let source = self.source.iter().copied().chain(other.source.iter().map(|x| x + no)).collect();
        let target = self.target.iter().copied().chain(other.target.iter().map(|x| x + no)).collect();
        let g = Self::from_structure(no + other.objects, source, target, |a, b| {
            if a < na {
                self.compose(a, b).expect("composable")
            } else {
                other.compose(a - na, b - na).expect("composable") + na
            }
        })
        .expect("coproduct satisfies the axioms");
        let obj = self.object_labels.iter().chain(&other.object_labels).cloned().collect();
        let arr = self.arrow_labels.iter().chain(&other.arrow_labels).cloned().collect();
        g.with_labels(obj, arr).expect("label lengths")
    }

    pub fn object_count(&self) -> usize {
        self.objects
    }

    pub fn arrow_count(&self) -> usize {
        self.source.len()
    }

    pub fn source(&self, a: usize) -> usize {
        self.source[a]
    }

    pub fn target(&self, a: usize) -> usize {
        self.target[a]
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_identity(&self, a: usize) -> bool {
        self.identity[self.source[a]] == a
    }

    pub fn arrows_from(&self, x: usize) -> &[usize] {
        &self.arrows_from[x]
    }

    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        (self.target[a] == self.source[b]).then(|| self.comp[a][self.position[b]])
    }

    pub fn object_label(&self, x: usize) -> &str {
        &self.object_labels[x]
    }

    pub fn arrow_label(&self, a: usize) -> &str {
        &self.arrow_labels[a]
    }

    /// Arrows from `x` to `y`.
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        self.arrows_from[x].iter().copied().filter(|&a| self.target[a] == y).collect()
    }

    /// Arrows from `x` to itself.
    pub fn isotropy(&self, x: usize) -> Vec<usize> {
        self.hom(x, x)
    }

    /// Connected component id of every object, ids assigned in order of first object.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.objects];
        let mut next = 0;
        for x in 0..self.objects {
            if comp[x] != usize::MAX {
                continue;
            }
            // arrows are invertible, so the orbit of x is everything reachable from x
            let mut stack = vec![x];
            comp[x] = next;
            while let Some(y) = stack.pop() {
                for &a in &self.arrows_from[y] {
                    let z = self.target[a];
                    if comp[z] == usize::MAX {
                        comp[z] = next;
                        stack.push(z);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Re-runs the full axiom audit on the stored tables.
    pub fn audit(&self) -> Result<()> {
        Self::from_structure(self.objects, self.source.clone(), self.target.clone(), |a, b| {
            self.comp[a][self.position[b]]
        })
        .map(|_| ())
    }
}
