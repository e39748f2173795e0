//! Finite fields, dense matrices and the classical generating sets.

mod classical;
mod field;
mod matrix;
mod projective;

pub use classical::{commutation_dimension, solve_commutation, Family, MatrixAut};
pub use field::{Fe, Field, MAX_FIELD_SIZE};
pub use matrix::FFMatrix;
pub use projective::ProjectiveSpace;
