//! Exact arithmetic for colored ice-type vertex models and their
//! Yang-Baxter equations.
//!
//! The crate is `no_std` with `alloc`. File formats and the command-line
//! front end live in the `ybx` crate.

#![no_std]

extern crate alloc;

pub mod error;
pub mod invariants;
pub mod lattice;
pub mod linalg;
pub mod model;
pub mod scalar;
pub mod solver;
pub mod transforms;
pub mod ybe;

pub use error::{Error, Result};
pub use invariants::{delta, InvariantCache};
pub use model::{Color, PairTable, RSlot, RWeightSet, Tag, VertexKind, VertexWeights, WeightSet};
pub use scalar::Scalar;
