//! Cohomology groups and class coordinates.
//!
//! Integer cohomology `Hᵏ = ker dₖ / im dₖ₋₁` is read off the Smith forms of
//! the two adjacent differentials. Circle cohomology uses
//! `Hᵏ(C; Q/Z) ≅ Hom(Hₖ(Cᵀ), Q/Z)`, with `Hₖ` the homology of the transposed
//! complex: Q/Z is divisible, so there is no Ext term, and a class is
//! determined by its values on a generating set of `Hₖ`.

use num_traits::Zero;

use super::circle::CircleValue;
use super::complex::ChainComplex;
use super::matrix::IntegerMatrix;
use super::presentation::AbelianGroupPresentation;
use super::scalar::Scalar;
use super::smith::{rank, smith_diagonal, smith_form, SmithForm};
use super::ZModule;
use crate::error::{Error, Result};

pub fn cohomology_integer<T: Scalar>(c: &ChainComplex<T>, k: usize) -> Result<AbelianGroupPresentation<T>> {
    c.check_degree(k)?;
    let (torsion, r_prev) = if k == 0 {
        (Vec::new(), 0)
    } else {
        let diag = smith_diagonal(c.differential(k - 1))?;
        let r = diag.len();
        (diag.into_iter().filter(|d| !d.is_one()).collect(), r)
    };
    let r_k = rank(c.differential(k))?;
    AbelianGroupPresentation::new(c.rank(k) - r_prev - r_k, torsion, 0)
}

pub fn cohomology_circle<T: Scalar>(c: &ChainComplex<T>, k: usize) -> Result<AbelianGroupPresentation<T>> {
    c.check_degree(k)?;
    let diag = smith_diagonal(&c.differential(k).transpose())?;
    let r_k = diag.len();
    let r_prev = if k == 0 { 0 } else { rank(c.differential(k - 1))? };
    let torsion = diag.into_iter().filter(|d| !d.is_one()).collect();
    AbelianGroupPresentation::new(0, torsion, c.rank(k) - r_k - r_prev)
}

/// Coordinates of a torsion class: `coords[i]` is taken modulo `factors[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorsionClass<T> {
    pub factors: Vec<T>,
    pub coords: Vec<T>,
}

impl<T: Scalar> TorsionClass<T> {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerClass<T> {
    pub torsion: TorsionClass<T>,
    pub free: Vec<T>,
}

impl<T: Scalar> IntegerClass<T> {
    pub fn is_zero(&self) -> bool {
        self.torsion.is_zero() && self.free.iter().all(Zero::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleClass<T> {
    pub torsion: TorsionClass<T>,
    /// Values on the free generators of homology; one per Q/Z summand.
    pub divisible: Vec<CircleValue>,
    /// Canonical cocycle in the class.
    pub representative: Vec<CircleValue>,
}

impl<T: Scalar> CircleClass<T> {
    pub fn is_zero(&self) -> bool {
        self.torsion.is_zero() && self.divisible.iter().all(CircleValue::is_zero)
    }
}

fn first_nonzero_row<T: Scalar, M: ZModule<T>>(
    d: &IntegerMatrix<T>,
    z: &[M],
    is_zero: impl Fn(&M) -> bool,
) -> Result<Option<usize>> {
    for i in 0..d.rows() {
        let mut acc = M::zero();
        for (j, v) in d.row(i) {
            acc = acc.add_m(&z[*j].scale(v)?)?;
        }
        if !is_zero(&acc) {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

fn check_len<M>(z: &[M], n: usize) -> Result<()> {
    if z.len() != n {
        return Err(Error::Shape(format!("cochain of length {} in a degree of rank {n}", z.len())));
    }
    Ok(())
}

/// Homology of the transposed complex in one degree, with a basis adapted to
/// the Smith forms of the two boundary maps around it.
#[derive(Clone, Debug)]
struct DualHomology<T> {
    n: usize,
    boundary: SmithForm<T>,
    kernel: SmithForm<T>,
}

impl<T: Scalar> DualHomology<T> {
    fn new(c: &ChainComplex<T>, k: usize) -> Result<Self> {
        let n = c.rank(k);
        let boundary = smith_form(&c.differential(k).transpose())?;
        let r = boundary.rank();
        // rows of ∂ₖ = dₖ₋₁ᵀ, re-expressed in the adapted basis: y ↦ y U⁻¹
        let incoming_t = c.incoming(k).transpose();
        let mut trip = Vec::new();
        for j in 0..incoming_t.rows() {
            if incoming_t.row(j).is_empty() {
                continue;
            }
            let mut y = vec![T::zero(); n];
            for (i, v) in incoming_t.row(j) {
                y[*i] = v.clone();
            }
            boundary.apply_u_inverse_transpose(&mut y)?;
            debug_assert!(y[..r].iter().all(Zero::is_zero));
            trip.extend(
                y.into_iter()
                    .enumerate()
                    .skip(r)
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| (j, i - r, v)),
            );
        }
        let restricted = IntegerMatrix::from_triplets(incoming_t.rows(), n - r, trip)?;
        let kernel = smith_form(&restricted)?;
        Ok(Self { n, boundary, kernel })
    }

    fn torsion_indices(&self) -> impl Iterator<Item = (usize, &T)> + '_ {
        self.boundary.diagonal().iter().enumerate().filter(|(_, d)| !d.is_one())
    }

    fn factors(&self) -> Vec<T> {
        self.boundary.invariant_factors()
    }

    fn free_count(&self) -> usize {
        self.n - self.boundary.rank() - self.kernel.rank()
    }

    /// `ẑ = U⁻ᵀ z`: the values of `z` on the adapted basis of chains.
    fn hat<M: ZModule<T>>(&self, z: &[M]) -> Result<Vec<M>> {
        let mut h = z.to_vec();
        self.boundary.apply_u_inverse_transpose(&mut h)?;
        Ok(h)
    }

    fn free_values<M: ZModule<T>>(&self, hat: &[M]) -> Result<Vec<M>> {
        let r = self.boundary.rank();
        let mut w = hat[r..].to_vec();
        self.kernel.apply_v_transpose(&mut w)?;
        Ok(w.split_off(self.kernel.rank()))
    }

    /// Cycles generating the torsion of homology, paired with their orders.
    fn torsion_generators(&self) -> Result<Vec<(T, Vec<T>)>> {
        self.torsion_indices()
            .map(|(i, d)| {
                let mut e = vec![T::zero(); self.n];
                e[i] = T::one();
                self.boundary.apply_u_inverse(&mut e)?;
                Ok((d.clone(), e))
            })
            .collect()
    }

    fn free_generators(&self) -> Result<Vec<Vec<T>>> {
        let r = self.boundary.rank();
        let m = self.n - r;
        (self.kernel.rank()..m)
            .map(|j| {
                let mut e = vec![T::zero(); m];
                e[j] = T::one();
                self.kernel.apply_v(&mut e)?;
                let mut full = vec![T::zero(); r];
                full.extend(e);
                self.boundary.apply_u_inverse(&mut full)?;
                Ok(full)
            })
            .collect()
    }
}

/// Reduces circle-valued `k`-cocycles of a fixed complex to class coordinates.
#[derive(Clone, Debug)]
pub struct CircleReducer<T> {
    d: IntegerMatrix<T>,
    dual: DualHomology<T>,
}

impl<T: Scalar> CircleReducer<T> {
    pub fn new(c: &ChainComplex<T>, k: usize) -> Result<Self> {
        c.check_degree(k)?;
        Ok(Self { d: c.differential(k).clone(), dual: DualHomology::new(c, k)? })
    }

    pub fn factors(&self) -> Vec<T> {
        self.dual.factors()
    }

    pub fn divisible_rank(&self) -> usize {
        self.dual.free_count()
    }

    pub fn group(&self) -> Result<AbelianGroupPresentation<T>> {
        AbelianGroupPresentation::new(0, self.factors(), self.divisible_rank())
    }

    pub fn check_cocycle(&self, z: &[CircleValue]) -> Result<()> {
        check_len(z, self.dual.n)?;
        match first_nonzero_row(&self.d, z, CircleValue::is_zero)? {
            Some(cell) => Err(Error::NotACocycle { cell }),
            None => Ok(()),
        }
    }

    pub fn reduce(&self, z: &[CircleValue]) -> Result<CircleClass<T>> {
        self.check_cocycle(z)?;
        let hat = self.dual.hat(z)?;
        let mut coords = Vec::new();
        for (i, d) in self.dual.torsion_indices() {
            let v = hat[i];
            let d_i64 = d.to_i64().ok_or(Error::Overflow)?;
            if d_i64 % v.denominator() != 0 {
                return Err(Error::NotACocycle { cell: i });
            }
            coords.push(T::from_i64_c(v.numerator() * (d_i64 / v.denominator()))?);
        }
        let torsion = TorsionClass { factors: self.factors(), coords };
        let divisible = self.dual.free_values(&hat)?;
        let representative = self.representative(&torsion.coords, &divisible)?;
        Ok(CircleClass { torsion, divisible, representative })
    }

    /// Canonical cocycle with the given torsion coordinates and free values.
    pub fn representative(&self, torsion: &[T], divisible: &[CircleValue]) -> Result<Vec<CircleValue>> {
        let tors: Vec<(usize, T)> = self.dual.torsion_indices().map(|(i, d)| (i, d.clone())).collect();
        if torsion.len() != tors.len() || divisible.len() != self.divisible_rank() {
            return Err(Error::Shape("coordinate vector does not match the cohomology group".into()));
        }
        let r = self.dual.boundary.rank();
        let mut hat = vec![CircleValue::ZERO; self.dual.n];
        for ((i, d), t) in tors.iter().zip(torsion) {
            let d = d.to_i64().ok_or(Error::Overflow)?;
            hat[*i] = CircleValue::new(t.rem_i64(d), d)?;
        }
        let mut tail = vec![CircleValue::ZERO; self.dual.n - r];
        let kr = self.dual.kernel.rank();
        tail[kr..].copy_from_slice(divisible);
        self.dual.kernel.apply_v_inverse_transpose(&mut tail)?;
        hat[r..].copy_from_slice(&tail);
        self.dual.boundary.apply_u_transpose(&mut hat)?;
        Ok(hat)
    }

    /// Homology cycles dual to the torsion coordinates.
    pub fn torsion_generators(&self) -> Result<Vec<(T, Vec<T>)>> {
        self.dual.torsion_generators()
    }

    pub fn free_generators(&self) -> Result<Vec<Vec<T>>> {
        self.dual.free_generators()
    }
}

/// Torsion coordinates in `Hᵏ(C; Z)`, from the Smith form of `dₖ₋₁`.
#[derive(Clone, Debug)]
pub struct TorsionReducer<T> {
    n: usize,
    smith: Option<SmithForm<T>>,
}

impl<T: Scalar> TorsionReducer<T> {
    /// Needs only `dₖ₋₁`, so `k` may be one above the top degree of `c`.
    pub fn new(c: &ChainComplex<T>, k: usize) -> Result<Self> {
        if k >= c.ranks().len() {
            return Err(Error::DegreeOutOfRange { degree: k, lo: 0, hi: c.ranks().len() - 1 });
        }
        let smith = if k == 0 { None } else { Some(smith_form(c.differential(k - 1))?) };
        Ok(Self { n: c.rank(k), smith })
    }

    pub fn factors(&self) -> Vec<T> {
        self.smith.as_ref().map(SmithForm::invariant_factors).unwrap_or_default()
    }

    pub fn reduce(&self, x: &[T]) -> Result<TorsionClass<T>> {
        check_len(x, self.n)?;
        let Some(s) = &self.smith else {
            return Ok(TorsionClass { factors: Vec::new(), coords: Vec::new() });
        };
        let mut y = x.to_vec();
        s.apply_u(&mut y)?;
        let mut factors = Vec::new();
        let mut coords = Vec::new();
        for (i, d) in s.diagonal().iter().enumerate() {
            if !d.is_one() {
                coords.push(y[i].mod_floor(d));
                factors.push(d.clone());
            }
        }
        Ok(TorsionClass { factors, coords })
    }
}

/// Full coordinates of integral `k`-cocycles: torsion part via [`TorsionReducer`],
/// free part by evaluation on free homology generators of the dual complex.
#[derive(Clone, Debug)]
pub struct IntegerReducer<T> {
    d: IntegerMatrix<T>,
    torsion: TorsionReducer<T>,
    dual: DualHomology<T>,
}

impl<T: Scalar> IntegerReducer<T> {
    pub fn new(c: &ChainComplex<T>, k: usize) -> Result<Self> {
        c.check_degree(k)?;
        Ok(Self {
            d: c.differential(k).clone(),
            torsion: TorsionReducer::new(c, k)?,
            dual: DualHomology::new(c, k)?,
        })
    }

    pub fn group(&self) -> Result<AbelianGroupPresentation<T>> {
        AbelianGroupPresentation::new(self.dual.free_count(), self.torsion.factors(), 0)
    }

    pub fn reduce(&self, x: &[T]) -> Result<IntegerClass<T>> {
        check_len(x, self.dual.n)?;
        if let Some(cell) = first_nonzero_row(&self.d, x, Zero::is_zero)? {
            return Err(Error::NotACocycle { cell });
        }
        let torsion = self.torsion.reduce(x)?;
        let hat = self.dual.hat(x)?;
        let free = self.dual.free_values(&hat)?;
        Ok(IntegerClass { torsion, free })
    }
}

pub fn reduce_cocycle<T: Scalar>(c: &ChainComplex<T>, z: &[CircleValue], k: usize) -> Result<CircleClass<T>> {
    CircleReducer::new(c, k)?.reduce(z)
}

pub fn reduce_integer_cocycle<T: Scalar>(c: &ChainComplex<T>, x: &[T], k: usize) -> Result<IntegerClass<T>> {
    IntegerReducer::new(c, k)?.reduce(x)
}

/// Integral lift of a circle cocycle's coboundary and its torsion coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BocksteinImage<T> {
    pub cocycle: Vec<T>,
    pub class: TorsionClass<T>,
}

/// Lifts the integer coboundary `d(z̃)` of a rational lift `z̃` of `z`.
pub(crate) fn bockstein_cocycle<T: Scalar>(d: &IntegerMatrix<T>, z: &[CircleValue]) -> Result<Vec<T>> {
    check_len(z, d.cols())?;
    let l = z.iter().fold(1i64, |acc, v| num_integer::Integer::lcm(&acc, &v.denominator()));
    let lt = T::from_i64_c(l)?;
    let lifted: Vec<T> = z
        .iter()
        .map(|v| T::from_i64_c(v.numerator() * (l / v.denominator())))
        .collect::<Result<_>>()?;
    let image = d.mul_vec(&lifted)?;
    image
        .into_iter()
        .enumerate()
        .map(|(cell, v)| {
            let (q, r) = v.div_rem(&lt);
            if r.is_zero() {
                Ok(q)
            } else {
                Err(Error::NotACocycle { cell })
            }
        })
        .collect()
}

/// Connecting map of `0 → Z → Q → Q/Z → 0` on a circle `k`-cocycle.
///
/// The image class is torsion, so it is fully described by its torsion
/// coordinates in `Hᵏ⁺¹(C; Z)`.
pub fn bockstein<T: Scalar>(c: &ChainComplex<T>, z: &[CircleValue], k: usize) -> Result<BocksteinImage<T>> {
    c.check_degree(k)?;
    let cocycle = bockstein_cocycle(c.differential(k), z)?;
    let class = TorsionReducer::new(c, k + 1)?.reduce(&cocycle)?;
    Ok(BocksteinImage { cocycle, class })
}
