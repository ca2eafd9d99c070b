//! Finite permutation groups and the class-membership tests around the
//! formation of groups whose cyclic primary subgroups are ℙ-subnormal.

pub mod arith;
pub mod bitset;
pub mod corpus;
pub mod error;
pub mod group;
pub mod harness;
pub mod lattice;
pub mod laws;
pub mod perm;
pub mod predicates;
pub mod theorem;

pub use corpus::{GroupSpec, Provenance};
pub use error::{Error, ErrorKind, Result};
pub use group::{GroupTable, Quotient, Subgroup};
pub use lattice::{ChiefFactor, Lattice};
pub use perm::Permutation;
