use serde::Serialize;

use super::torsion::DiscreteTorsion;
use crate::error::{Error, Result};
use crate::exactalg::CircleValue;
use crate::groupoid::{Cells, FiniteGroup, FiniteGroupoid, InertiaGroupoid, SimplicialAction};

/// Circle-valued function on the arrows of an inertia groupoid.
#[derive(Clone, Debug)]
pub struct InnerLocalSystem {
    base: FiniteGroupoid,
    inertia: InertiaGroupoid,
    values: Vec<CircleValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LocalSystemFailure {
    /// `L(a∘b) ≠ L(a) + L(b)`.
    Functoriality { first: usize, second: usize },
    /// Nonzero value on an arrow between identity loops.
    IdentitySector { arrow: usize },
    /// `L(i(a)) ≠ −L(a)` for the inversion involution `i`.
    Inversion { arrow: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalSystemVerdict {
    pub valid: bool,
    pub certificate: Option<LocalSystemFailure>,
}

/// Values of a local system on the automorphisms of one sector's representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectorCharacter {
    /// Base loop representing the sector; for `[*/G]` a group element.
    pub loop_arrow: usize,
    pub label: String,
    /// `(base arrow α, value)` for every automorphism `(v, α)` of `v`.
    pub values: Vec<(usize, CircleValue)>,
}

impl InnerLocalSystem {
    pub fn new(base: &FiniteGroupoid, values: Vec<CircleValue>) -> Result<Self> {
        let inertia = InertiaGroupoid::new(base);
        if values.len() != inertia.groupoid().arrow_count() {
            return Err(Error::Shape(format!(
                "{} values for {} inertia arrows",
                values.len(),
                inertia.groupoid().arrow_count()
            )));
        }
        Ok(Self { base: base.clone(), inertia, values })
    }

    pub fn trivial(base: &FiniteGroupoid) -> Self {
        let inertia = InertiaGroupoid::new(base);
        let values = vec![CircleValue::ZERO; inertia.groupoid().arrow_count()];
        Self { base: base.clone(), inertia, values }
    }

    pub fn base(&self) -> &FiniteGroupoid {
        &self.base
    }

    pub fn inertia(&self) -> &InertiaGroupoid {
        &self.inertia
    }

    pub fn values(&self) -> &[CircleValue] {
        &self.values
    }

    /// Value on the inertia arrow `(v, α)`.
    pub fn value(&self, v: usize, alpha: usize) -> Option<CircleValue> {
        let i = self.inertia.object_of_loop(v)?;
        Some(self.values[self.inertia.arrow_index(i, alpha)?])
    }

    pub fn set(&mut self, arrow: usize, value: CircleValue) {
        self.values[arrow] = value;
    }

    /// Restriction to the automorphisms of each sector's representative.
    pub fn characters(&self) -> Vec<SectorCharacter> {
        let g = self.inertia.groupoid();
        self.inertia
            .sectors()
            .into_iter()
            .map(|s| {
                let obj = self.inertia.object_of_loop(s.representative).expect("sector loop");
                let values =
                    g.isotropy(obj).into_iter().map(|a| (self.inertia.arrow(a).1, self.values[a])).collect();
                SectorCharacter { loop_arrow: s.representative, label: s.label, values }
            })
            .collect()
    }
}

/// Exhaustive check of the inner local system axioms.
pub fn verify_inner_local_system(l: &InnerLocalSystem) -> LocalSystemVerdict {
    let fail = |f| LocalSystemVerdict { valid: false, certificate: Some(f) };
    let g = l.inertia.groupoid();
    for a in 0..g.arrow_count() {
        for &b in g.arrows_from(g.target(a)) {
            let ab = g.compose(a, b).expect("composable");
            if l.values[ab] != l.values[a] + l.values[b] {
                return fail(LocalSystemFailure::Functoriality { first: a, second: b });
            }
        }
    }
    for a in 0..g.arrow_count() {
        let v = l.inertia.loop_of(g.source(a));
        if l.base.is_identity(v) && !l.values[a].is_zero() {
            return fail(LocalSystemFailure::IdentitySector { arrow: a });
        }
    }
    for a in 0..g.arrow_count() {
        if l.values[l.inertia.invert_arrow(&l.base, a)] != -l.values[a] {
            return fail(LocalSystemFailure::Inversion { arrow: a });
        }
    }
    LocalSystemVerdict { valid: true, certificate: None }
}

/// Inner local system on `Λ[*/G]` induced by a discrete torsion.
///
/// The arrow `(v, α)` from `v` to `w = α⁻¹vα` carries `θ(v, α) − θ(α, w)`;
/// for `α` commuting with `v` this is the sector character `θ(v, α) − θ(α, v)`.
pub fn transgress(theta: &DiscreteTorsion) -> InnerLocalSystem {
    let group: &FiniteGroup = theta.group();
    let base = FiniteGroupoid::translation(&SimplicialAction::on_point(group.clone()), Cells::GroupOnly);
    let inertia = InertiaGroupoid::new(&base);
    // arrows of [*/G] are indexed by the group elements themselves
    let values = (0..inertia.groupoid().arrow_count())
        .map(|a| {
            let (i, alpha) = inertia.arrow(a);
            let v = inertia.loop_of(i);
            let w = group.conjugate(v, alpha);
            theta.value(v, alpha) - theta.value(alpha, w)
        })
        .collect();
    InnerLocalSystem { base, inertia, values }
}
