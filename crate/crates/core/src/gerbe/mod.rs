//! Flat gerbes with band U(1) on translation groupoids: cocycles and their
//! classes, discrete torsion, transgression to inner local systems on the
//! inertia groupoid, and holonomy of flat line bundles.

mod cocycle;
mod holonomy;
mod local;
mod torsion;

pub use cocycle::{dd_class, flat_class, verify_gerbe, GerbeCocycle, GerbeVerdict};
pub use holonomy::{flat_holonomy, CombinatorialLoop, Step};
pub use local::{
    transgress, verify_inner_local_system, InnerLocalSystem, LocalSystemFailure, LocalSystemVerdict, SectorCharacter,
};
pub use torsion::{
    enumerate_discrete_torsion, torsion_to_gerbe, DiscreteTorsion, TorsionClassCoords, DISCRETE_TORSION_BOUND,
};
