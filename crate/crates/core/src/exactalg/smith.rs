//! Smith normal form over an exact integer [`Scalar`].
//!
//! Elimination runs on a sparse working copy. Pivots are the entry of smallest
//! absolute value among the uneliminated rows and columns, ties broken by the
//! lowest `(row, col)`, which makes the output a deterministic function of the
//! input. The unimodular factors are kept as logs of elementary operations so
//! that large complexes never need a dense `U` or `V`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed};

use super::matrix::IntegerMatrix;
use super::scalar::Scalar;
use super::ZModule;
use crate::error::{Error, Result};

/// A single unimodular elementary matrix acting on coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elementary<T> {
    /// `x[dst] += c * x[src]`
    AddMul { src: usize, dst: usize, c: T },
    Swap(usize, usize),
    Negate(usize),
    /// `(x[a], x[b]) <- m * (x[a], x[b])` with `det m = 1`
    Mix { a: usize, b: usize, m: [[T; 2]; 2] },
}

fn mix<T: Scalar, M: ZModule<T>>(x: &mut [M], a: usize, b: usize, m: &[[T; 2]; 2]) -> Result<()> {
    let xa = x[a].scale(&m[0][0])?.add_m(&x[b].scale(&m[0][1])?)?;
    let xb = x[a].scale(&m[1][0])?.add_m(&x[b].scale(&m[1][1])?)?;
    x[a] = xa;
    x[b] = xb;
    Ok(())
}

fn inverse2<T: Scalar>(m: &[[T; 2]; 2]) -> Result<[[T; 2]; 2]> {
    Ok([
        [m[1][1].clone(), m[0][1].neg_c()?],
        [m[1][0].neg_c()?, m[0][0].clone()],
    ])
}

fn transpose2<T: Scalar>(m: &[[T; 2]; 2]) -> [[T; 2]; 2] {
    [
        [m[0][0].clone(), m[1][0].clone()],
        [m[0][1].clone(), m[1][1].clone()],
    ]
}

impl<T: Scalar> Elementary<T> {
    fn apply<M: ZModule<T>>(&self, x: &mut [M]) -> Result<()> {
        match self {
            Self::AddMul { src, dst, c } => x[*dst] = x[*dst].add_m(&x[*src].scale(c)?)?,
            Self::Swap(a, b) => x.swap(*a, *b),
            Self::Negate(a) => x[*a] = x[*a].neg_m()?,
            Self::Mix { a, b, m } => mix(x, *a, *b, m)?,
        }
        Ok(())
    }

    fn apply_transpose<M: ZModule<T>>(&self, x: &mut [M]) -> Result<()> {
        match self {
            Self::AddMul { src, dst, c } => x[*src] = x[*src].add_m(&x[*dst].scale(c)?)?,
            Self::Mix { a, b, m } => mix(x, *a, *b, &transpose2(m))?,
            other => other.apply(x)?,
        }
        Ok(())
    }

    fn apply_inverse<M: ZModule<T>>(&self, x: &mut [M]) -> Result<()> {
        match self {
            Self::AddMul { src, dst, c } => {
                x[*dst] = x[*dst].add_m(&x[*src].scale(&c.neg_c()?)?)?
            }
            Self::Mix { a, b, m } => mix(x, *a, *b, &inverse2(m)?)?,
            other => other.apply(x)?,
        }
        Ok(())
    }

    fn apply_inverse_transpose<M: ZModule<T>>(&self, x: &mut [M]) -> Result<()> {
        match self {
            Self::AddMul { src, dst, c } => {
                x[*src] = x[*src].add_m(&x[*dst].scale(&c.neg_c()?)?)?
            }
            Self::Mix { a, b, m } => mix(x, *a, *b, &transpose2(&inverse2(m)?))?,
            other => other.apply(x)?,
        }
        Ok(())
    }
}

/// Product `E_m ⋯ E_1` of elementary matrices, stored in application order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transform<T> {
    dim: usize,
    ops: Vec<Elementary<T>>,
}

impl<T: Scalar> Transform<T> {
    pub fn identity(dim: usize) -> Self {
        Self { dim, ops: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    fn push(&mut self, op: Elementary<T>) {
        self.ops.push(op);
    }

    fn check<M>(&self, x: &[M]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::Shape(format!(
                "vector of length {} for a transform of dimension {}",
                x.len(),
                self.dim
            )));
        }
        Ok(())
    }

    /// `x <- T x`
    pub fn apply<M: ZModule<T>>(&self, x: &mut [M]) -> Result<()> {
        self.check(x)?;
        self.ops.iter().try_for_each(|op| op.apply(x))
    }

    /// `x <- Tᵀ x`
    pub fn apply_transpose<M: ZModule<T>>(&self, x: &mut [M]) -> Result<()> {
        self.check(x)?;
        self.ops.iter().rev().try_for_each(|op| op.apply_transpose(x))
    }

    /// `x <- T⁻¹ x`
    pub fn apply_inverse<M: ZModule<T>>(&self, x: &mut [M]) -> Result<()> {
        self.check(x)?;
        self.ops.iter().rev().try_for_each(|op| op.apply_inverse(x))
    }

    /// `x <- T⁻ᵀ x`
    pub fn apply_inverse_transpose<M: ZModule<T>>(&self, x: &mut [M]) -> Result<()> {
        self.check(x)?;
        self.ops.iter().try_for_each(|op| op.apply_inverse_transpose(x))
    }

    /// Dense materialization; only sensible for small dimensions.
    pub fn to_matrix(&self) -> Result<IntegerMatrix<T>> {
        // columns of T are T e_j
        let mut trip = Vec::new();
        for j in 0..self.dim {
            let mut e = vec![T::zero(); self.dim];
            e[j] = T::one();
            self.apply(&mut e)?;
            trip.extend(e.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, j, v)));
        }
        IntegerMatrix::from_triplets(self.dim, self.dim, trip)
    }
}

/// Smith form with the unimodular factors held as operation logs:
/// `U · A · V = D` where `U = row` and `V = colᵀ`.
#[derive(Clone, Debug)]
pub struct SmithForm<T> {
    rows: usize,
    cols: usize,
    diag: Vec<T>,
    row: Transform<T>,
    col: Transform<T>,
}

impl<T: Scalar> SmithForm<T> {
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Nonzero diagonal entries `d₁ | d₂ | …`.
    pub fn diagonal(&self) -> &[T] {
        &self.diag
    }

    /// Diagonal entries greater than one.
    pub fn invariant_factors(&self) -> Vec<T> {
        self.diag.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn row_transform(&self) -> &Transform<T> {
        &self.row
    }

    pub fn col_transform_transposed(&self) -> &Transform<T> {
        &self.col
    }

    pub fn apply_u<M: ZModule<T>>(&self, x: &mut [M]) -> Result<()> {
        self.row.apply(x)
    }

    pub fn apply_u_inverse<M: ZModule<T>>(&self, x: &mut [M]) -> Result<()> {
        self.row.apply_inverse(x)
    }

    pub fn apply_u_transpose<M: ZModule<T>>(&self, x: &mut [M]) -> Result<()> {
        self.row.apply_transpose(x)
    }

    pub fn apply_u_inverse_transpose<M: ZModule<T>>(&self, x: &mut [M]) -> Result<()> {
        self.row.apply_inverse_transpose(x)
    }

    pub fn apply_v<M: ZModule<T>>(&self, x: &mut [M]) -> Result<()> {
        self.col.apply_transpose(x)
    }

    pub fn apply_v_inverse<M: ZModule<T>>(&self, x: &mut [M]) -> Result<()> {
        self.col.apply_inverse_transpose(x)
    }

    pub fn apply_v_transpose<M: ZModule<T>>(&self, x: &mut [M]) -> Result<()> {
        self.col.apply(x)
    }

    pub fn apply_v_inverse_transpose<M: ZModule<T>>(&self, x: &mut [M]) -> Result<()> {
        self.col.apply_inverse(x)
    }

    pub fn to_decomposition(&self) -> Result<SmithDecomposition<T>> {
        let d = IntegerMatrix::from_triplets(
            self.rows,
            self.cols,
            self.diag.iter().enumerate().map(|(k, v)| (k, k, v.clone())),
        )?;
        Ok(SmithDecomposition {
            u: self.row.to_matrix()?,
            d,
            v: self.col.to_matrix()?.transpose(),
        })
    }
}

/// Materialized `U · A · V = D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition<T> {
    pub u: IntegerMatrix<T>,
    pub d: IntegerMatrix<T>,
    pub v: IntegerMatrix<T>,
}

impl<T: Scalar> SmithDecomposition<T> {
    pub fn diagonal(&self) -> Vec<T> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|k| self.d.get(k, k)).filter(|v| !v.is_zero()).collect()
    }

    /// Recomputes `U·A·V` and checks it equals `D`, that `D` is a divisibility
    /// chain, and that `|det U| = |det V| = 1`.
    pub fn verify(&self, a: &IntegerMatrix<T>) -> Result<bool> {
        let uav = self.u.mul(a)?.mul(&self.v)?;
        if uav != self.d {
            return Ok(false);
        }
        let diag = self.diagonal();
        let n = self.d.rows().min(self.d.cols());
        for k in 0..n {
            for j in 0..self.d.cols() {
                if j != k && !self.d.get(k, j).is_zero() {
                    return Ok(false);
                }
            }
        }
        if diag.iter().any(|d| d.is_negative()) || diag.windows(2).any(|w| !(w[1].is_multiple_of(&w[0]))) {
            return Ok(false);
        }
        // zeros trail the nonzero entries
        if (0..diag.len()).any(|k| self.d.get(k, k).is_zero()) {
            return Ok(false);
        }
        let du = self.u.determinant()?;
        let dv = self.v.determinant()?;
        Ok(du.abs().is_one() && dv.abs().is_one())
    }
}

struct Work<T> {
    rows: Vec<BTreeMap<usize, T>>,
    cols: Vec<BTreeSet<usize>>,
    active: BTreeSet<usize>,
    row_log: Option<Transform<T>>,
    col_log: Option<Transform<T>>,
}

impl<T: Scalar> Work<T> {
    fn new(a: &IntegerMatrix<T>, log: bool) -> Self {
        let mut rows = vec![BTreeMap::new(); a.rows()];
        let mut cols = vec![BTreeSet::new(); a.cols()];
        for (i, j, v) in a.triplets() {
            rows[i].insert(j, v.clone());
            cols[j].insert(i);
        }
        let active = (0..a.rows()).filter(|&i| !rows[i].is_empty()).collect();
        Self {
            rows,
            cols,
            active,
            row_log: log.then(|| Transform::identity(a.rows())),
            col_log: log.then(|| Transform::identity(a.cols())),
        }
    }

    fn set(&mut self, i: usize, j: usize, v: T) {
        if v.is_zero() {
            self.rows[i].remove(&j);
            self.cols[j].remove(&i);
        } else {
            self.rows[i].insert(j, v);
            self.cols[j].insert(i);
        }
    }

    /// `row[dst] += c * row[src]`
    fn row_add(&mut self, src: usize, dst: usize, c: T) -> Result<()> {
        let entries: Vec<(usize, T)> = self.rows[src].iter().map(|(j, v)| (*j, v.clone())).collect();
        for (j, v) in entries {
            let cur = self.rows[dst].get(&j).cloned().unwrap_or_else(T::zero);
            let nv = cur.add_c(&c.mul_c(&v)?)?;
            self.set(dst, j, nv);
        }
        if self.rows[dst].is_empty() {
            self.active.remove(&dst);
        }
        if let Some(log) = self.row_log.as_mut() {
            log.push(Elementary::AddMul { src, dst, c });
        }
        Ok(())
    }

    /// `col[dst] += c * col[src]`
    fn col_add(&mut self, src: usize, dst: usize, c: T) -> Result<()> {
        let rows: Vec<usize> = self.cols[src].iter().copied().collect();
        for i in rows {
            let v = self.rows[i][&src].clone();
            let cur = self.rows[i].get(&dst).cloned().unwrap_or_else(T::zero);
            let nv = cur.add_c(&c.mul_c(&v)?)?;
            self.set(i, dst, nv);
            if self.rows[i].is_empty() {
                self.active.remove(&i);
            }
        }
        if let Some(log) = self.col_log.as_mut() {
            log.push(Elementary::AddMul { src, dst, c });
        }
        Ok(())
    }

    fn find_pivot(&self) -> Result<Option<(usize, usize, T)>> {
        let mut best: Option<(usize, usize, T)> = None;
        for &i in &self.active {
            for (j, v) in &self.rows[i] {
                let a = v.abs_c()?;
                if best.as_ref().map_or(true, |b| a < b.2) {
                    let unit = a.is_one();
                    best = Some((i, *j, a));
                    if unit {
                        return Ok(best);
                    }
                }
            }
        }
        Ok(best)
    }
}

fn run<T: Scalar>(a: &IntegerMatrix<T>, log: bool) -> Result<SmithForm<T>> {
    let (m, n) = a.shape();
    let mut w = Work::new(a, log);
    let mut pivots: Vec<(usize, usize, T)> = Vec::new();

    while let Some((i, j, _)) = w.find_pivot()? {
        let p = w.rows[i][&j].clone();
        let others: Vec<usize> = w.cols[j].iter().copied().filter(|&r| r != i).collect();
        for r in others {
            let q = w.rows[r][&j].quot_c(&p)?;
            if !q.is_zero() {
                w.row_add(i, r, q.neg_c()?)?;
            }
        }
        let others: Vec<usize> = w.rows[i].keys().copied().filter(|&c| c != j).collect();
        for c in others {
            let q = w.rows[i][&c].quot_c(&p)?;
            if !q.is_zero() {
                w.col_add(j, c, q.neg_c()?)?;
            }
        }
        if w.cols[j].len() == 1 && w.rows[i].len() == 1 {
            w.active.remove(&i);
            pivots.push((i, j, p));
        }
    }

    let mut row_log = w.row_log.take();
    let mut col_log = w.col_log.take();

    // move pivot k to (k, k)
    let mut row_at: Vec<usize> = (0..m).collect();
    let mut row_pos: Vec<usize> = (0..m).collect();
    let mut col_at: Vec<usize> = (0..n).collect();
    let mut col_pos: Vec<usize> = (0..n).collect();
    let mut diag = Vec::with_capacity(pivots.len());
    for (k, (i, j, p)) in pivots.into_iter().enumerate() {
        let cur = row_pos[i];
        if cur != k {
            let other = row_at[k];
            row_at.swap(k, cur);
            row_pos[i] = k;
            row_pos[other] = cur;
            if let Some(l) = row_log.as_mut() {
                l.push(Elementary::Swap(k, cur));
            }
        }
        let cur = col_pos[j];
        if cur != k {
            let other = col_at[k];
            col_at.swap(k, cur);
            col_pos[j] = k;
            col_pos[other] = cur;
            if let Some(l) = col_log.as_mut() {
                l.push(Elementary::Swap(k, cur));
            }
        }
        if p.is_negative() {
            if let Some(l) = row_log.as_mut() {
                l.push(Elementary::Negate(k));
            }
            diag.push(p.neg_c()?);
        } else {
            diag.push(p);
        }
    }

    // enforce d_k | d_l by replacing (a, b) with (gcd, lcm)
    let r = diag.len();
    for k in 0..r {
        for l in k + 1..r {
            if diag[l].is_multiple_of(&diag[k]) {
                continue;
            }
            let (a, b) = (diag[k].clone(), diag[l].clone());
            let eg = a.extended_gcd(&b);
            let g = eg.gcd;
            let (s, t) = (eg.x, eg.y);
            let a_g = a.quot_c(&g)?;
            let b_g = b.quot_c(&g)?;
            let u = [[s.clone(), t.clone()], [b_g.neg_c()?, a_g.clone()]];
            let v = [
                [T::one(), t.mul_c(&b_g)?.neg_c()?],
                [T::one(), s.mul_c(&a_g)?],
            ];
            if let Some(lg) = row_log.as_mut() {
                lg.push(Elementary::Mix { a: k, b: l, m: u });
            }
            if let Some(lg) = col_log.as_mut() {
                lg.push(Elementary::Mix { a: k, b: l, m: transpose2(&v) });
            }
            diag[l] = a.mul_c(&b_g)?;
            diag[k] = g;
        }
    }

    Ok(SmithForm {
        rows: m,
        cols: n,
        diag,
        row: row_log.unwrap_or_else(|| Transform::identity(m)),
        col: col_log.unwrap_or_else(|| Transform::identity(n)),
    })
}

/// Smith form with logged transforms.
pub fn smith_form<T: Scalar>(a: &IntegerMatrix<T>) -> Result<SmithForm<T>> {
    run(a, true)
}

/// Diagonal only; the transforms are left as identities.
pub fn smith_diagonal<T: Scalar>(a: &IntegerMatrix<T>) -> Result<Vec<T>> {
    Ok(run(a, false)?.diag)
}

pub fn rank<T: Scalar>(a: &IntegerMatrix<T>) -> Result<usize> {
    Ok(run(a, false)?.diag.len())
}

/// Full decomposition with materialized `U`, `D`, `V`.
pub fn smith_normal_form<T: Scalar>(a: &IntegerMatrix<T>) -> Result<SmithDecomposition<T>> {
    smith_form(a)?.to_decomposition()
}
