use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{bockstein, CircleClass, CircleReducer, CircleValue, Scalar, TorsionClass};
use crate::nerve::{CellId, DoubleComplex};

/// Flat gerbe: a circle-valued 2-cochain on the total complex of a
/// translation groupoid, with components on (2-simplex, 0-string),
/// (1-simplex, 1-string) and (0-simplex, 2-string) cells.
#[derive(Clone, Debug)]
pub struct GerbeCocycle<'a, T> {
    base: &'a DoubleComplex<T>,
    values: Vec<CircleValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GerbeVerdict {
    pub valid: bool,
    /// First 3-cell on which the total coboundary does not vanish.
    pub violation: Option<String>,
}

impl<'a, T: Scalar> GerbeCocycle<'a, T> {
    /// Wraps a 2-cochain; use [`verify_gerbe`] to check the cocycle condition.
    pub fn new(base: &'a DoubleComplex<T>, values: Vec<CircleValue>) -> Result<Self> {
        if base.top() < 2 {
            return Err(Error::Shape("gerbes need a total complex built up to degree 2".into()));
        }
        if values.len() != base.rank(2) {
            return Err(Error::Shape(format!("{} values for {} cells of degree 2", values.len(), base.rank(2))));
        }
        Ok(Self { base, values })
    }

    pub fn zero(base: &'a DoubleComplex<T>) -> Result<Self> {
        Self::new(base, vec![CircleValue::ZERO; base.rank(2)])
    }

    /// Total coboundary of a 1-cochain.
    pub fn coboundary(base: &'a DoubleComplex<T>, w: &[CircleValue]) -> Result<Self> {
        let values = apply(base.complex().differential(1), w)?;
        Self::new(base, values)
    }

    pub fn base(&self) -> &'a DoubleComplex<T> {
        self.base
    }

    pub fn values(&self) -> &[CircleValue] {
        &self.values
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if !std::ptr::eq(self.base, other.base) {
            return Err(Error::Shape("gerbes live on different complexes".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| *a + *b).collect();
        Ok(Self { base: self.base, values })
    }
}

/// `d · w` for an integer matrix acting on circle values.
pub(crate) fn apply<T: Scalar>(d: &crate::exactalg::IntegerMatrix<T>, w: &[CircleValue]) -> Result<Vec<CircleValue>> {
    if w.len() != d.cols() {
        return Err(Error::Shape(format!("cochain of length {} for a map with {} columns", w.len(), d.cols())));
    }
    (0..d.rows())
        .map(|i| {
            d.row(i).iter().try_fold(CircleValue::ZERO, |acc, (j, v)| {
                let k = v.to_i64().ok_or(Error::Overflow)?;
                Ok(acc + w[*j].mul_int(k))
            })
        })
        .collect()
}

/// Checks that the total coboundary of `g` vanishes.
pub fn verify_gerbe<T: Scalar>(g: &GerbeCocycle<'_, T>) -> Result<GerbeVerdict> {
    let dg = apply(g.base.complex().differential(2), &g.values)?;
    let violation = dg.iter().position(|v| !v.is_zero()).map(|i| {
        let cell = g.base.cell(3, i).expect("row of the differential is a cell");
        g.base.cell_id(&cell).to_string()
    });
    Ok(GerbeVerdict { valid: violation.is_none(), violation })
}

fn require_cocycle<T: Scalar>(g: &GerbeCocycle<'_, T>) -> Result<()> {
    let v = verify_gerbe(g)?;
    match v.violation {
        None => Ok(()),
        Some(id) => {
            let id: CellId = id.parse()?;
            let cell = g.base.resolve(&id).expect("violation names a cell");
            Err(Error::NotACocycle { cell: g.base.index(&cell).expect("indexed cell") })
        }
    }
}

/// Dixmier–Douady class: the Bockstein of `g`, as torsion coordinates in
/// `H³(base; Z)`.
pub fn dd_class<T: Scalar>(g: &GerbeCocycle<'_, T>) -> Result<TorsionClass<T>> {
    require_cocycle(g)?;
    Ok(bockstein(g.base.complex(), &g.values, 2)?.class)
}

/// Class of `g` in `H²(base; Q/Z)`; it separates flat gerbes up to isomorphism.
pub fn flat_class<T: Scalar>(g: &GerbeCocycle<'_, T>) -> Result<CircleClass<T>> {
    require_cocycle(g)?;
    CircleReducer::new(g.base.complex(), 2)?.reduce(&g.values)
}
