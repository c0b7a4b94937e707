//! Cluster seeds, their classical and quantum tori, the quantum logarithm and
//! dilogarithm, and the unitary intertwiner attached to a mutation.

pub mod error;
pub mod grid;
pub mod intertwiner;
pub mod io;
pub mod quantum;
pub mod sample;
pub mod seed;
pub mod special;
pub mod tolerances;
pub mod symbolic;

pub use error::{Error, Result};
pub use seed::{Label, Permutation, Seed};
