//! Exact linear algebra over the rationals and simple extensions.

pub mod bareiss;
pub mod echelon;
pub mod field;
pub mod matrix;

pub use echelon::{Echelon, SparseRow, SubspaceBasis};
pub use field::{ExtElem, Field, Rational, Rationals, SimpleExtension, Q};
pub use matrix::{sign, swap_matrix, Matrix};
