//! Finite simplicial sets and their homology.

pub mod chain;
pub mod cube;
pub mod homology;
pub mod nerve;
pub mod op;
pub mod product;
pub mod quotient;
pub mod snf;
pub mod sset;

pub use chain::{ChainComplex, SparseMatrix};
pub use homology::{homology, Coefficients, HomologyGroup, HomologyResult};
pub use op::Op;
pub use sset::{models, CellId, Simplex, SimplicialSet, Subobject};
