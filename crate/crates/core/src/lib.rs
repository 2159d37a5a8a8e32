//! Exact computations on the functional code C₂(X) of the non-degenerate
//! Hermitian surface X ⊂ PG(3,q), q = t².
//!
//! The crate classifies every quadric of PG(3,q) by how it meets X, computes
//! the weight distribution of the code spanned by evaluations of quadratic
//! forms on X, and checks the closed-form section sizes, weights and
//! codeword counts against exhaustive or sampled censuses.

pub mod bitset;
pub mod census;
pub mod cli;
pub mod code;
pub mod error;
pub mod field;
pub mod geometry;
pub mod linalg;
pub mod quadric;
pub mod report;
pub mod shard;
pub mod surface;

pub use bitset::PointSet;
pub use error::{Error, Result};
pub use field::{build_field, Elem, FieldSpec};
pub use geometry::{Coords, Geometry, Line, Plane, ProjPoint};
pub use quadric::{classify, ClassDetail, QuadraticForm, QuadricClass, QuadricKind, Regulus};
pub use surface::{HermitianSurface, LineClass};
