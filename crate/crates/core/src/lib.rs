//! Moderately discontinuous homotopy and homology of normal surface
//! singularities with the inner metric, computed from a rated decomposition
//! graph, plus the skeleton thickening subdivision and convex interpolation
//! on simplicial complexes.
//!
//! * [`chain`]: integer matrices, Smith normal form, homology.
//! * [`presentation`]: finitely presented groups and their assembly.
//! * [`thickening`]: skeleton thickening decomposition and extension.
//! * [`rated`]: rated graphs, the `(b,1)`-homotopy model and its invariants.

pub mod chain;
pub mod par;
pub mod presentation;
pub mod rational;
pub mod rated;
pub mod thickening;

pub use chain::{AbelianGroup, ChainComplex, ChainMap, IntMatrix};
pub use par::Execution;
pub use presentation::{GroupHom, Presentation, Word};
pub use rated::{Rate, RatedGraph};
