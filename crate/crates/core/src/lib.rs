//! Simplicial complexes, wreath products and the combinatorial properties
//! they preserve.

pub mod complex;
pub mod constructions;
pub mod decompose;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod io;
pub mod iso;
pub mod label;
pub mod suite;
pub mod symmetry;
pub mod topology;
pub mod verdict;
pub mod vset;

pub use complex::{FVector, Simplex, SimplicialComplex};
pub use error::{Error, Result};
pub use label::VertexLabel;
pub use vset::VertexSet;
pub use verdict::{Budget, Certificate, PropertyVerdict, Status};
