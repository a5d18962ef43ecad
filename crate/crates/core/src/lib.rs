//! Partial grid recognition: unit-length lattice embeddings in two and three
//! dimensions, polynomial recognizers by degree set, and the gadget
//! reductions from not-all-equal 3SAT.

pub mod dichotomy;
pub mod embed;
pub mod error;
pub mod formula;
pub mod gadgets;
pub mod graph;
pub mod orientation;
pub mod skeleton;

pub use error::{Error, Result};
