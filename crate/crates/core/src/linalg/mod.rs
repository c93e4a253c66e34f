//! Exact rational and integer linear algebra.

pub mod field;
pub mod lattice;
pub mod matrix;
pub mod quotient;
pub mod rat;
pub mod snf;
pub mod subspace;

pub use lattice::{hnf, hnf_with_transform, IntMat, ZLattice};
pub use matrix::{Matrix, QMat};
pub use quotient::order_in_quotient;
pub use rat::{Int, Rat};
pub use snf::{snf, Smith};
pub use subspace::Subspace;
