//! Projective resolutions of right modules over `Λ = kQ/I`, computed with
//! noncommutative Gröbner bases in the path algebra `kQ`.
//!
//! The pipeline is: parse a [`problem::Problem`], complete the relations to a
//! [`groebner::GroebnerBasis`], enumerate nontips and the right Gröbner data,
//! then run [`resolution::build_resolution`] (general overlap-driven step) or
//! [`koszul::koszul_resolution`] (linear modules over quadratic algebras).

pub mod algebra;
pub mod coeff;
pub mod commands;
pub mod error;
pub mod fixtures;
pub mod groebner;
pub mod koszul;
pub mod linalg;
pub mod matrix;
pub mod module;
pub mod nontips;
pub mod order;
pub mod par;
pub mod problem;
pub mod quiver;
pub mod quotient;
pub mod resolution;
pub mod syntax;

pub use algebra::{Element, PathAlgebra, Term};
pub use coeff::{Field, Scalar};
pub use error::{Error, Result};
pub use groebner::{Completeness, GroebnerBasis};
pub use module::{Frame, IndexOrder, ModuleVector};
pub use order::AdmissibleOrder;
pub use par::Exec;
pub use quiver::{ArrowId, Path, Quiver, VertexId};
pub use quotient::QuotientAlgebra;
