//! Stanley–Reisner ring invariants of simplicial complexes, computed exactly.
//!
//! The crate covers exact linear algebra over ℚ and GF(p), reduced homology,
//! Betti tables and local cohomology through Hochster's formulas, ring
//! property classification, generators for named complex families, and the
//! Cohen–Macaulay cover and sandwich constructions.

pub mod combinat;
pub mod complex;
pub mod corpus;
pub mod cover;
pub mod error;
pub mod families;
pub mod hochster;
pub mod homology;
pub mod iso;
pub mod linalg;
pub mod props;
pub mod sc;
pub mod vset;

pub use complex::{FVector, HVector, Indeg, SimplicialComplex};
pub use error::{Error, Result};
pub use homology::{reduced_homology, HomologyProfile};
pub use linalg::{ExactMatrix, FieldSpec};
pub use vset::VertexSet;
