//! Exact equivariant algebra over finite groups: G-sets, Burnside rings,
//! Mackey and Tambara functors, norms of Mackey functors, and the dihedral
//! real topological Hochschild homology of discrete E_sigma rings.

pub mod abgrp;
pub mod boxnorm;
pub mod burnside;
pub mod error;
pub mod groups;
pub mod gsets;
pub mod hr;
pub mod mackey;
pub mod suite;
pub mod tambara;
pub mod witt;

pub use error::{Error, Result};
