//! Computational group theory for minimal base sizes.

pub mod bounds;
pub mod catalog;
pub mod cert;
pub mod classical;
pub mod error;
pub mod field;
pub mod group;
pub mod invariants;
pub mod lattice;
pub mod matrix;
pub mod partition;
pub mod perm;

pub use error::{Error, Result};
pub use group::PermGroup;
pub use perm::Permutation;
