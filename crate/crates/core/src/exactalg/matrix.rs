use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Sparse integer matrix, rows stored as column-sorted `(col, value)` lists with no
/// explicit zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> IntegerMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, T::one())]).collect();
        Self { rows: n, cols: n, data }
    }

    /// Builds from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Result<Self> {
        let mut data: Vec<Vec<(usize, T)>> = vec![Vec::new(); rows];
        for (i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(Error::Shape(format!(
                    "entry ({i}, {j}) outside a {rows}x{cols} matrix"
                )));
            }
            data[i].push((j, v));
        }
        for row in &mut data {
            row.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, T)> = Vec::with_capacity(row.len());
            for (j, v) in row.drain(..) {
                match merged.last_mut() {
                    Some((lj, lv)) if *lj == j => *lv = lv.add_c(&v)?,
                    _ => merged.push((j, v)),
                }
            }
            merged.retain(|(_, v)| !v.is_zero());
            *row = merged;
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_dense(entries: &[Vec<T>]) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged dense matrix".into()));
        }
        Self::from_triplets(
            rows,
            cols,
            entries
                .iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, v)| (i, j, v.clone()))),
        )
    }

    pub fn from_i64_rows(entries: &[Vec<i64>]) -> Result<Self> {
        let conv: Result<Vec<Vec<T>>> = entries
            .iter()
            .map(|r| r.iter().map(|&v| T::from_i64_c(v)).collect())
            .collect();
        Self::from_dense(&conv?)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(usize, T)] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        match self.data[i].binary_search_by_key(&j, |e| e.0) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut out = vec![vec![T::zero(); self.cols]; self.rows];
        for (i, j, v) in self.triplets() {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<Vec<(usize, T)>> = vec![Vec::new(); self.cols];
        for (i, j, v) in self.triplets() {
            data[j].push((i, v.clone()));
        }
        Self { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut trip = Vec::new();
        for (i, row) in self.data.iter().enumerate() {
            let mut acc: std::collections::BTreeMap<usize, T> = Default::default();
            for (k, a) in row {
                for (j, b) in &rhs.data[*k] {
                    let e = acc.entry(*j).or_insert_with(T::zero);
                    *e = e.add_c(&a.mul_c(b)?)?;
                }
            }
            trip.extend(acc.into_iter().map(|(j, v)| (i, j, v)));
        }
        Self::from_triplets(self.rows, rhs.cols, trip)
    }

    pub fn mul_vec(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .try_fold(T::zero(), |acc, (j, v)| acc.add_c(&v.mul_c(&x[*j])?))
            })
            .collect()
    }

    pub fn convert<U: Scalar>(&self) -> Result<IntegerMatrix<U>> {
        let data = self
            .data
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(j, v)| Ok((*j, U::from_bigint(&v.to_bigint())?)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntegerMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination over `BigInt`.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = self
            .to_dense()
            .into_iter()
            .map(|r| r.iter().map(Scalar::to_bigint).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }
}

impl<T: fmt::Debug> fmt::Debug for IntegerMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for (i, row) in self.data.iter().enumerate() {
            writeln!(f, "  {i}: {row:?}")?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, String)>,
}

impl<T: Scalar> Serialize for IntegerMatrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            entries: self.triplets().map(|(i, j, v)| (i, j, v.to_string())).collect(),
        }
        .serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for IntegerMatrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = MatrixRepr::deserialize(d)?;
        let trip = repr
            .entries
            .into_iter()
            .map(|(i, j, v)| {
                v.parse::<T>()
                    .map(|v| (i, j, v))
                    .map_err(|_| D::Error::custom(format!("bad integer {v:?}")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        IntegerMatrix::from_triplets(repr.rows, repr.cols, trip).map_err(D::Error::custom)
    }
}
