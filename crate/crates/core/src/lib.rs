//! Symbolic computation with braid groups on compact orientable surfaces,
//! their Vassiliev filtration, and the chord-diagram-with-beads algebras
//! attached to them.

pub mod abelian;
pub mod algebra;
pub mod braid;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod linalg;
pub mod perm;
pub mod surface;
pub mod symplectic;
pub mod verifier;

pub use error::{Error, Result};
pub use perm::Perm;
pub use surface::SurfaceParams;
