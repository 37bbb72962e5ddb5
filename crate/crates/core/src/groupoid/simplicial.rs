use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{ChainComplex, IntegerMatrix, Scalar};

/// Finite simplicial complex with simplices stored as increasing vertex tuples.
///
/// `simplices[d]` lists the `d`-simplices in a fixed order; the position in that
/// list is the simplex id used everywhere else.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ComplexRepr", into = "ComplexRepr")]
pub struct SimplicialComplex {
    vertex_count: usize,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

#[derive(Serialize, Deserialize)]
struct ComplexRepr {
    vertex_count: usize,
    simplices: Vec<Vec<Vec<usize>>>,
}

impl TryFrom<ComplexRepr> for SimplicialComplex {
    type Error = Error;

    fn try_from(r: ComplexRepr) -> Result<Self> {
        SimplicialComplex::new(r.vertex_count, r.simplices)
    }
}

impl From<SimplicialComplex> for ComplexRepr {
    fn from(c: SimplicialComplex) -> Self {
        ComplexRepr { vertex_count: c.vertex_count, simplices: c.simplices }
    }
}

impl SimplicialComplex {
    /// Validates the listing: dimension 0 is `[0], [1], …`, tuples are
    /// increasing, there are no duplicates and every face is listed.
    pub fn new(vertex_count: usize, simplices: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidComplex(m));
        if vertex_count > 0 && simplices.is_empty() {
            return bad("vertices are not listed".into());
        }
        if let Some(v) = simplices.first() {
            if v.len() != vertex_count || v.iter().enumerate().any(|(i, s)| s != &[i]) {
                return bad("dimension 0 must list [0], [1], … in order".into());
            }
        }
        let mut index: Vec<HashMap<Vec<usize>, usize>> = Vec::with_capacity(simplices.len());
        for (d, list) in simplices.iter().enumerate() {
            let mut map = HashMap::with_capacity(list.len());
            for (i, s) in list.iter().enumerate() {
                if s.len() != d + 1 {
                    return bad(format!("simplex {s:?} listed in dimension {d}"));
                }
                if s.windows(2).any(|w| w[0] >= w[1]) || s.iter().any(|&v| v >= vertex_count) {
                    return bad(format!("simplex {s:?} is not an increasing tuple of vertices"));
                }
                if map.insert(s.clone(), i).is_some() {
                    return bad(format!("duplicate simplex {s:?}"));
                }
                if d > 0 {
                    for j in 0..=d {
                        let f = face_tuple(s, j);
                        if !index[d - 1].contains_key(&f) {
                            return bad(format!("face {f:?} of {s:?} is missing"));
                        }
                    }
                }
            }
            index.push(map);
        }
        if simplices.last().is_some_and(Vec::is_empty) {
            return bad("top dimension is empty".into());
        }
        Ok(Self { vertex_count, simplices, index })
    }

    /// Downward closure of the given simplices, listed in lexicographic order.
    pub fn from_facets(vertex_count: usize, facets: &[Vec<usize>]) -> Result<Self> {
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for f in facets {
            let mut s = f.clone();
            s.sort_unstable();
            if s.is_empty() || s.windows(2).any(|w| w[0] == w[1]) || s.iter().any(|&v| v >= vertex_count) {
                return Err(Error::InvalidComplex(format!("bad facet {f:?}")));
            }
            let n = s.len();
            for mask in 1u64..(1 << n) {
                let sub: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                let d = sub.len() - 1;
                if by_dim.len() <= d {
                    by_dim.resize(d + 1, BTreeSet::new());
                }
                by_dim[d].insert(sub);
            }
        }
        if by_dim.is_empty() {
            by_dim.push(BTreeSet::new());
        }
        by_dim[0].extend((0..vertex_count).map(|v| vec![v]));
        Self::new(vertex_count, by_dim.into_iter().map(|s| s.into_iter().collect()).collect())
    }

    pub fn point() -> Self {
        Self::from_facets(1, &[vec![0]]).expect("point")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Top dimension; 0 for the empty complex.
    pub fn dim(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices.get(d).map_or(0, Vec::len)
    }

    pub fn cell_count(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        self.simplices.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn simplex(&self, d: usize, i: usize) -> &[usize] {
        &self.simplices[d][i]
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    /// Id of the `j`-th face (vertex `j` removed) of the `d`-simplex `i`.
    pub fn face(&self, d: usize, i: usize, j: usize) -> usize {
        self.index[d - 1][&face_tuple(&self.simplices[d][i], j)]
    }

    /// Simplicial cochain complex, `(df)(σ) = Σ (−1)ʲ f(dⱼσ)`, degrees `0..=dim`.
    pub fn cochain_complex<T: Scalar>(&self) -> Result<ChainComplex<T>> {
        let ranks: Vec<usize> = (0..=self.dim()).map(|d| self.count(d)).chain([0]).collect();
        let mut maps = Vec::new();
        for d in 0..=self.dim() {
            let mut trip = Vec::new();
            for i in 0..self.count(d + 1) {
                for j in 0..=d + 1 {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    trip.push((i, self.face(d + 1, i, j), T::from_i64_c(sign)?));
                }
            }
            maps.push(IntegerMatrix::from_triplets(ranks[d + 1], ranks[d], trip)?);
        }
        ChainComplex::cohomological(ranks, maps)
    }

    /// Euler characteristic.
    pub fn euler(&self) -> i64 {
        (0..=self.dim()).map(|d| if d % 2 == 0 { self.count(d) as i64 } else { -(self.count(d) as i64) }).sum()
    }

    /// Vertices of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let n = self.vertex_count;
        let dims = self.simplices.len().max(other.simplices.len());
        let simplices = (0..dims)
            .map(|d| {
                let mut list = self.simplices(d).to_vec();
                list.extend(other.simplices(d).iter().map(|s| s.iter().map(|v| v + n).collect()));
                list
            })
            .collect();
        Self::new(n + other.vertex_count, simplices).expect("union of complexes")
    }
}

pub(crate) fn face_tuple(s: &[usize], j: usize) -> Vec<usize> {
    s.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect()
}
