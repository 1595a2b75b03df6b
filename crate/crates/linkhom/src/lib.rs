//! Link-homotopy classes of 4- and 5-component links, modelled as orbits of an
//! explicit group of polynomial automorphisms acting on integer invariant
//! vectors.

pub mod action;
pub mod algebra;
pub mod homotopy;
mod error;
pub mod model;
pub mod table;
pub mod verify;
pub mod word;

pub use action::{state_power, ActionMap};
pub use algebra::{Algebra, Resolved};
pub use error::Error;
pub use homotopy::{decide, normal_form, orbit_bfs, Orbit, Verdict};
pub use model::{load_scheme, CoordinateScheme, Family, GeneratorId, InvariantVector};
pub use table::{load_table, ActionTable, BracketConvention, BundledTable};
pub use word::{Factor, Term, Word};

/// Integer polynomials in the coordinate variables.
pub type Poly = polyring::IntPoly;
