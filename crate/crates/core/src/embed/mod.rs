//! Unit-length lattice embeddings: validation, canonical forms, exact search
//! and rendering.

pub mod embedding;
pub mod lattice;
pub mod render;
pub mod solver;

pub use embedding::{canonical_labeled, canonicalize, validate_embedding, CanonicalDrawing, Embedding};
pub use lattice::{symmetry_group, Dim, Point, Symmetry};
pub use render::{render, render_ascii, render_svg, RenderFormat};
pub use solver::{enumerate_embeddings, enumerate_with, solve, Enumeration, SolveConstraints, SolveOutcome};
