//! Finite rings, clean-family decompositions and exhaustive verification of
//! generalized weakly nil-clean (GWNC) ring properties.

pub mod constructions;
pub mod decompositions;
pub mod dsl;
pub mod error;
pub mod ring;
pub mod structure;
pub mod subset;
pub mod verify;

pub use error::{BuildError, MemoError};
pub use ring::{Elem, Ring, RingOps};
pub use subset::Subset;
