//! Exact rational scalars, dense matrices and canonical subspaces.

pub mod matrix;
pub mod rational;
pub mod subspace;

pub use matrix::{kernel_basis, kernel_of_rows, rref, Matrix, RowEchelon, Rref};
pub use rational::Rational;
pub use subspace::{subspace_algebra, Subspace, SubspaceOp, SubspaceValue};
