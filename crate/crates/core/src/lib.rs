//! Exact computations for positively graded quiver algebras with quadratic relations:
//! quadratic duals, minimal resolutions, linear complexes of projectives and the
//! duality functors between a quadratic algebra and its dual.

pub mod algebra;
pub mod complex;
pub mod catalog;
pub mod dual;
pub mod error;
pub mod field;
pub mod format;
pub mod functors;
pub mod koszul_complex;
pub mod linear;
pub mod matrix;
pub mod module;
pub mod projective;
pub mod quiver;
pub mod random;

pub use algebra::{Element, GradedAlgebra};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use matrix::Matrix;
pub use quiver::{Path, Presentation, Quiver, Relation};
