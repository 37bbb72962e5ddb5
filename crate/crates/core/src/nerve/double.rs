use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{ChainComplex, IntegerMatrix, Scalar};
use crate::groupoid::SimplicialAction;

/// Truncation of the double complex: simplex dimensions `p ≤ p_max`, nerve
/// levels `q ≤ q_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    pub p_max: usize,
    pub q_max: usize,
}

impl Truncation {
    /// Smallest truncation that determines cohomology up to degree `k` over a
    /// space of dimension `dim`.
    pub fn sufficient(k: usize, dim: usize) -> Self {
        Self { p_max: (k + 1).min(dim), q_max: k + 1 }
    }

    pub fn check(&self, k: usize, dim: usize) -> Result<()> {
        let need = Self::sufficient(k, dim);
        if self.p_max < need.p_max || self.q_max < need.q_max {
            return Err(Error::InsufficientTruncation {
                degree: k,
                p_max: self.p_max,
                q_max: self.q_max,
                needed: need.q_max,
                dim,
            });
        }
        Ok(())
    }
}

impl FromStr for Truncation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s.split_once(',').ok_or_else(|| Error::Parse(format!("truncation {s:?} is not p,q")))?;
        let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| Error::Parse(format!("truncation {s:?}: {e}")));
        Ok(Self { p_max: parse(p)?, q_max: parse(q)? })
    }
}

/// Generator of the total complex: a `p`-simplex together with a string of
/// `q` composable arrows starting at it, written as the group elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TotalCell {
    pub p: usize,
    pub simplex: usize,
    pub string: Vec<usize>,
}

impl TotalCell {
    pub fn q(&self) -> usize {
        self.string.len()
    }

    pub fn degree(&self) -> usize {
        self.p + self.q()
    }
}

/// Printable cell identifier: simplex vertices, a bar, then element indices,
/// for example `0,3|1,2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellId {
    pub vertices: Vec<usize>,
    pub string: Vec<usize>,
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}|{}", join(&self.vertices), join(&self.string))
    }
}

impl FromStr for CellId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (v, g) = s.split_once('|').ok_or_else(|| Error::Parse(format!("cell id {s:?} lacks '|'")))?;
        let list = |x: &str| -> Result<Vec<usize>> {
            if x.trim().is_empty() {
                return Ok(Vec::new());
            }
            x.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("cell id {s:?}: {e}"))))
                .collect()
        };
        let vertices = list(v)?;
        if vertices.is_empty() {
            return Err(Error::Parse(format!("cell id {s:?} has no vertices")));
        }
        Ok(Self { vertices, string: list(g)? })
    }
}

/// Total complex of the double complex of the translation groupoid of an
/// action, built for total degrees `0..=top + 1` so that cohomology is exact
/// up to degree `top`.
///
/// `C^{p,q}` is spanned by pairs (`p`-simplex `σ`, string `g₁…g_q`), the string
/// standing for the composable arrows `(σ, g₁), (σg₁, g₂), …`. The vertical
/// differential is the nerve coboundary, the horizontal one the simplicial
/// coboundary `d f(τ) = Σ (−1)ʲ f(dⱼτ)`, and the total differential on
/// `C^{p,q}` is `δ + (−1)^q d`.
#[derive(Clone, Debug)]
pub struct DoubleComplex<T> {
    action: SimplicialAction,
    normalized: bool,
    top: usize,
    truncation: Truncation,
    // per total degree n and p: (offset, string count)
    blocks: Vec<Vec<Option<(usize, usize)>>>,
    elements: Vec<usize>,
    slot: Vec<Option<usize>>,
    complex: ChainComplex<T>,
}

impl<T: Scalar> DoubleComplex<T> {
    /// Normalized double complex with the smallest sufficient truncation.
    pub fn new(action: &SimplicialAction, top: usize) -> Result<Self> {
        Self::with_options(action, top, Truncation::sufficient(top, action.space().dim()), true)
    }

    pub fn with_options(action: &SimplicialAction, top: usize, truncation: Truncation, normalized: bool) -> Result<Self> {
        action.require_order_preserving()?;
        let space = action.space();
        truncation.check(top, space.dim())?;
        let group = action.group();
        let elements: Vec<usize> =
            if normalized { group.nontrivial().collect() } else { (0..group.order()).collect() };
        let m = elements.len();
        let mut slot = vec![None; group.order()];
        for (i, &g) in elements.iter().enumerate() {
            slot[g] = Some(i);
        }
        let mut blocks = Vec::new();
        let mut ranks = Vec::new();
        for n in 0..=top + 1 {
            let mut row = vec![None; n + 1];
            let mut offset = 0;
            for (p, entry) in row.iter_mut().enumerate() {
                let q = n - p;
                if p > truncation.p_max || q > truncation.q_max || p > space.dim() {
                    continue;
                }
                let strings = m.pow(q as u32);
                *entry = Some((offset, strings));
                offset += space.count(p) * strings;
            }
            blocks.push(row);
            ranks.push(offset);
        }
        let mut dc = Self {
            action: action.clone(),
            normalized,
            top,
            truncation,
            blocks,
            elements,
            slot,
            complex: ChainComplex::cohomological(vec![0], Vec::new())?,
        };
        let maps = (0..=top).map(|n| dc.differential(n, &ranks)).collect::<Result<Vec<_>>>()?;
        dc.complex = ChainComplex::cohomological(ranks, maps)?;
        Ok(dc)
    }

    fn differential(&self, n: usize, ranks: &[usize]) -> Result<IntegerMatrix<T>> {
        let space = self.action.space();
        let group = self.action.group();
        let one = T::one();
        let minus = T::zero().sub_c(&one)?;
        let sign = |e: usize| if e % 2 == 0 { one.clone() } else { minus.clone() };
        let mut trip = Vec::new();
        for (row, cell) in self.cells(n + 1).enumerate() {
            let (p, q) = (cell.p, cell.q());
            let g: Vec<usize> = cell.string.clone();
            // vertical: faces of the string, from C^{p,q-1}
            if q >= 1 {
                for i in 0..=q {
                    let face = if i == 0 {
                        Some(TotalCell { p, simplex: self.action.act(p, cell.simplex, g[0]), string: g[1..].to_vec() })
                    } else if i == q {
                        Some(TotalCell { p, simplex: cell.simplex, string: g[..q - 1].to_vec() })
                    } else {
                        let prod = group.mul(g[i - 1], g[i]);
                        if self.normalized && prod == group.identity() {
                            None
                        } else {
                            let mut s = g[..i - 1].to_vec();
                            s.push(prod);
                            s.extend_from_slice(&g[i + 1..]);
                            Some(TotalCell { p, simplex: cell.simplex, string: s })
                        }
                    };
                    if let Some(col) = face.and_then(|f| self.index(&f)) {
                        trip.push((row, col, sign(i)));
                    }
                }
            }
            // horizontal: faces of the simplex, from C^{p-1,q}, with sign (−1)^q
            if p >= 1 {
                for j in 0..=p {
                    let f = TotalCell { p: p - 1, simplex: space.face(p, cell.simplex, j), string: g.clone() };
                    if let Some(col) = self.index(&f) {
                        trip.push((row, col, sign(j + q)));
                    }
                }
            }
        }
        IntegerMatrix::from_triplets(ranks[n + 1], ranks[n], trip)
    }

    pub fn action(&self) -> &SimplicialAction {
        &self.action
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn complex(&self) -> &ChainComplex<T> {
        &self.complex
    }

    pub fn rank(&self, n: usize) -> usize {
        self.complex.rank(n)
    }

    /// Position of a cell in its total degree, if it is a generator.
    pub fn index(&self, c: &TotalCell) -> Option<usize> {
        let n = c.degree();
        let (offset, strings) = (*self.blocks.get(n)?.get(c.p)?)?;
        if c.simplex >= self.action.space().count(c.p) {
            return None;
        }
        let m = self.elements.len();
        let mut code = 0;
        for &g in &c.string {
            code = code * m + self.slot.get(g).copied().flatten()?;
        }
        Some(offset + c.simplex * strings + code)
    }

    fn decode(&self, mut code: usize, q: usize) -> Vec<usize> {
        let m = self.elements.len();
        let mut string = vec![0; q];
        for s in string.iter_mut().rev() {
            *s = self.elements[code % m];
            code /= m;
        }
        string
    }

    /// Generators of total degree `n`, in index order.
    pub fn cells(&self, n: usize) -> impl Iterator<Item = TotalCell> + '_ {
        let space = self.action.space();
        self.blocks[n].iter().enumerate().filter_map(|(p, b)| b.map(|b| (p, b))).flat_map(move |(p, (_, strings))| {
            (0..space.count(p)).flat_map(move |simplex| {
                (0..strings).map(move |code| TotalCell { p, simplex, string: self.decode(code, n - p) })
            })
        })
    }

    pub fn cell(&self, n: usize, i: usize) -> Option<TotalCell> {
        let space = self.action.space();
        for (p, b) in self.blocks.get(n)?.iter().enumerate() {
            let Some((offset, strings)) = *b else { continue };
            if i >= offset && i < offset + space.count(p) * strings {
                let local = i - offset;
                return Some(TotalCell { p, simplex: local / strings, string: self.decode(local % strings, n - p) });
            }
        }
        None
    }

    pub fn cell_id(&self, c: &TotalCell) -> CellId {
        CellId { vertices: self.action.space().simplex(c.p, c.simplex).to_vec(), string: c.string.clone() }
    }

    pub fn resolve(&self, id: &CellId) -> Option<TotalCell> {
        let simplex = self.action.space().index_of(&id.vertices)?;
        let c = TotalCell { p: id.vertices.len() - 1, simplex, string: id.string.clone() };
        self.index(&c).map(|_| c)
    }

    pub fn convert<U: Scalar>(&self) -> Result<DoubleComplex<U>> {
        Ok(DoubleComplex {
            action: self.action.clone(),
            normalized: self.normalized,
            top: self.top,
            truncation: self.truncation,
            blocks: self.blocks.clone(),
            elements: self.elements.clone(),
            slot: self.slot.clone(),
            complex: self.complex.convert()?,
        })
    }
}
