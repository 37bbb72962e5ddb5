use crate::error::Result;
use crate::exactalg::{ChainComplex, IntegerMatrix, Scalar};
use crate::groupoid::FiniteGroup;

/// Normalized bar complex of a finite group with trivial integer coefficients.
///
/// Degree `q` has one generator per tuple of `q` non-identity elements,
/// numbered in base `|G| − 1` with the first entry most significant. Degrees
/// run `0..=top + 1`, so cohomology is available up to `top`.
#[derive(Clone, Debug)]
pub struct BarComplex<T> {
    group: FiniteGroup,
    elements: Vec<usize>,
    complex: ChainComplex<T>,
}

impl<T: Scalar> BarComplex<T> {
    pub fn new(group: &FiniteGroup, top: usize) -> Result<Self> {
        let elements: Vec<usize> = group.nontrivial().collect();
        let m = elements.len();
        let mut slot = vec![usize::MAX; group.order()];
        for (i, &g) in elements.iter().enumerate() {
            slot[g] = i;
        }
        let ranks: Vec<usize> = (0..=top + 1).map(|q| m.pow(q as u32)).collect();
        let mut maps = Vec::new();
        for q in 0..=top {
            let mut trip = Vec::new();
            for r in 0..ranks[q + 1] {
                let tuple = decode(r, q + 1, m);
                let g: Vec<usize> = tuple.iter().map(|&i| elements[i]).collect();
                for i in 0..=q + 1 {
                    let face: Option<Vec<usize>> = if i == 0 {
                        Some(tuple[1..].to_vec())
                    } else if i == q + 1 {
                        Some(tuple[..q].to_vec())
                    } else {
                        let prod = group.mul(g[i - 1], g[i]);
                        (prod != group.identity()).then(|| {
                            let mut t = tuple[..i - 1].to_vec();
                            t.push(slot[prod]);
                            t.extend_from_slice(&tuple[i + 1..]);
                            t
                        })
                    };
                    if let Some(f) = face {
                        trip.push((r, encode(&f, m), T::from_i64_c(if i % 2 == 0 { 1 } else { -1 })?));
                    }
                }
            }
            maps.push(IntegerMatrix::from_triplets(ranks[q + 1], ranks[q], trip)?);
        }
        Ok(Self { group: group.clone(), elements, complex: ChainComplex::cohomological(ranks, maps)? })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn complex(&self) -> &ChainComplex<T> {
        &self.complex
    }

    /// Generator index of a tuple of non-identity elements.
    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        let m = self.elements.len();
        let digits: Option<Vec<usize>> = tuple.iter().map(|g| self.elements.iter().position(|e| e == g)).collect();
        digits.map(|d| encode(&d, m))
    }

    /// Group elements of generator `r` in degree `q`.
    pub fn tuple(&self, q: usize, r: usize) -> Vec<usize> {
        decode(r, q, self.elements.len()).into_iter().map(|i| self.elements[i]).collect()
    }
}

fn encode(digits: &[usize], m: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * m + d)
}

fn decode(mut r: usize, q: usize, m: usize) -> Vec<usize> {
    let mut out = vec![0; q];
    for slot in out.iter_mut().rev() {
        *slot = r % m;
        r /= m;
    }
    out
}
