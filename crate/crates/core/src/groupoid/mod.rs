//! Finite groups, simplicial actions and finite groupoids: translation and
//! inertia groupoids, morphisms and weak equivalence.

mod action;
mod group;
#[allow(clippy::module_inception)]
mod groupoid;
mod inertia;
mod morphism;
mod simplicial;
mod subdivision;

pub use action::SimplicialAction;
pub use group::{small_groups, FiniteGroup};
pub use groupoid::{Cells, FiniteGroupoid};
pub use inertia::{twisted_sectors, InertiaGroupoid, Sector};
pub use morphism::{EquivalenceFailure, EquivalenceVerdict, GroupoidMorphism};
pub use simplicial::SimplicialComplex;
pub use subdivision::{CellularAction, FacePoset};
