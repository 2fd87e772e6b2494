//! Exact computations for numerical semigroups and faces of the Kunz
//! polyhedron: Apéry sets, Kunz posets, factorizations, minimal
//! presentations, outer Betti elements and face dimension.

pub mod error;
pub mod exactmath;
pub mod facetools;
pub mod factorization;
pub mod io;
pub mod kunzposet;
pub mod oracle;
pub mod presentation;
pub mod semigroup;

pub use error::{Error, Result};
pub use facetools::{find_semigroup_on_face, on_face, Face, FaceSearch, Obstruction, Position};
pub use factorization::{Factorization, Trade};
pub use kunzposet::{KunzPoset, NilElem};
pub use semigroup::{AperyTuple, KunzTuple, NumericalSemigroup};
