//! Executable partition calculus.
//!
//! This crate enumerates irreducible partitions and strict fusions, builds
//! the partition-poset complexes `T_Λ = |P(Λ)| / ∂|P(Λ)|`, classifies good
//! and bad diagonals, and assembles the coend `M^[Λ] ⊗_{E_n} T_Λ` for a
//! finite simplicial model of `M`, together with integer homology of all
//! of these objects.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command
//! line front end and caching live in the `forestcalc` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod category;
pub mod cofibrant;
pub mod error;
pub mod fusion;
pub mod layers;
pub mod partition;
pub mod perm;
pub mod simplicial;
pub mod unionfind;
pub mod verify;

pub use error::{Error, Result};
pub use partition::{Partition, PosetTable, SetMap};
