//! Dense complex linear algebra for the small matrices used throughout the crate.

mod eigen;
mod matrix;

pub use eigen::{hermitian_eigen, EigenResult};
pub use matrix::{bell_basis, c, change_basis, kron, ComplexMatrix};
