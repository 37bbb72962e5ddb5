use serde::{Deserialize, Serialize};

use super::cocycle::apply;
use crate::error::{Error, Result};
use crate::exactalg::{CircleValue, Scalar};
use crate::nerve::{DoubleComplex, TotalCell};

/// One step of a combinatorial loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Step {
    /// Edge `[a, b]` of the space, run from `a` to `b` when `forward`.
    Edge { edge: usize, forward: bool },
    /// Arrow `(v, g)` from `v` to `v·g`; backwards it runs from `v·g` to `v`.
    Arrow { element: usize, forward: bool },
}

/// Closed path in the 1-skeleton of the classifying space: edges of the space
/// and arrows of the translation groupoid, starting at a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombinatorialLoop {
    pub start: usize,
    pub steps: Vec<Step>,
}

impl CombinatorialLoop {
    pub fn constant(start: usize) -> Self {
        Self { start, steps: Vec::new() }
    }

    /// Walks the loop, returning the visited `(cell, sign)` pairs.
    fn walk<T: Scalar>(&self, base: &DoubleComplex<T>) -> Result<Vec<(Option<usize>, i64)>> {
        let action = base.action();
        let space = action.space();
        let group = action.group();
        if self.start >= space.vertex_count() {
            return Err(Error::InvalidLoop(format!("start vertex {} does not exist", self.start)));
        }
        let mut at = self.start;
        let mut out = Vec::with_capacity(self.steps.len());
        for (k, step) in self.steps.iter().enumerate() {
            match *step {
                Step::Edge { edge, forward } => {
                    if edge >= space.count(1) {
                        return Err(Error::InvalidLoop(format!("step {k}: edge {edge} does not exist")));
                    }
                    let e = space.simplex(1, edge);
                    let (from, to) = if forward { (e[0], e[1]) } else { (e[1], e[0]) };
                    if from != at {
                        return Err(Error::InvalidLoop(format!("step {k}: edge {edge} does not start at {at}")));
                    }
                    at = to;
                    let cell = TotalCell { p: 1, simplex: edge, string: Vec::new() };
                    out.push((base.index(&cell), if forward { 1 } else { -1 }));
                }
                Step::Arrow { element, forward } => {
                    if element >= group.order() {
                        return Err(Error::InvalidLoop(format!("step {k}: element {element} does not exist")));
                    }
                    let tail = if forward { at } else { action.act_vertex(at, group.inv(element)) };
                    at = if forward { action.act_vertex(at, element) } else { tail };
                    let cell = TotalCell { p: 0, simplex: tail, string: vec![element] };
                    out.push((base.index(&cell), if forward { 1 } else { -1 }));
                }
            }
        }
        if at != self.start {
            return Err(Error::InvalidLoop(format!("loop ends at {at}, not at its start {}", self.start)));
        }
        Ok(out)
    }

    /// Loops with the same start are concatenated.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.start != other.start {
            return Err(Error::InvalidLoop("loops must share their base point".into()));
        }
        Ok(Self { start: self.start, steps: self.steps.iter().chain(&other.steps).copied().collect() })
    }

    pub fn reversed(&self) -> Self {
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| match *s {
                Step::Edge { edge, forward } => Step::Edge { edge, forward: !forward },
                Step::Arrow { element, forward } => Step::Arrow { element, forward: !forward },
            })
            .collect();
        Self { start: self.start, steps }
    }

    /// Boundary of a 2-cell of the total complex, a contractible loop.
    pub fn boundary<T: Scalar>(base: &DoubleComplex<T>, cell: &TotalCell) -> Result<Self> {
        let action = base.action();
        let space = action.space();
        let edge = |a: usize, b: usize| -> Result<Step> {
            let (lo, hi) = (a.min(b), a.max(b));
            let e = space.index_of(&[lo, hi]).ok_or_else(|| Error::InvalidLoop(format!("no edge [{lo}, {hi}]")))?;
            Ok(Step::Edge { edge: e, forward: a < b })
        };
        match (cell.p, cell.string.as_slice()) {
            (2, []) => {
                let t = space.simplex(2, cell.simplex);
                Ok(Self { start: t[0], steps: vec![edge(t[0], t[1])?, edge(t[1], t[2])?, edge(t[2], t[0])?] })
            }
            (1, &[g]) => {
                let e = space.simplex(1, cell.simplex);
                let (a, b) = (e[0], e[1]);
                let (ag, bg) = (action.act_vertex(a, g), action.act_vertex(b, g));
                Ok(Self {
                    start: a,
                    steps: vec![
                        edge(a, b)?,
                        Step::Arrow { element: g, forward: true },
                        edge(bg, ag)?,
                        Step::Arrow { element: g, forward: false },
                    ],
                })
            }
            (0, &[g, h]) => {
                let gh = action.group().mul(g, h);
                Ok(Self {
                    start: cell.simplex,
                    steps: vec![
                        Step::Arrow { element: g, forward: true },
                        Step::Arrow { element: h, forward: true },
                        Step::Arrow { element: gh, forward: false },
                    ],
                })
            }
            _ => Err(Error::InvalidLoop(format!("{cell:?} is not a 2-cell"))),
        }
    }
}

/// Holonomy of a flat total 1-cocycle `λ` along a loop: the signed sum of
/// `λ` over the loop's edges and arrows. Identity arrows contribute nothing.
pub fn flat_holonomy<T: Scalar>(base: &DoubleComplex<T>, lambda: &[CircleValue], path: &CombinatorialLoop) -> Result<CircleValue> {
    if base.top() < 1 || lambda.len() != base.rank(1) {
        return Err(Error::Shape(format!("λ has {} values, degree 1 has {} cells", lambda.len(), base.rank(1))));
    }
    if let Some(cell) = apply(base.complex().differential(1), lambda)?.iter().position(|v| !v.is_zero()) {
        return Err(Error::NotACocycle { cell });
    }
    Ok(path
        .walk(base)?
        .into_iter()
        .filter_map(|(cell, sign)| cell.map(|c| lambda[c].mul_int(sign)))
        .sum())
}
