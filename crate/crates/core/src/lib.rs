//! Exact computations with diagram representations: endomorphism algebras and
//! their dual coalgebras, formal period spaces, torsors, isometry equations and
//! simplicial cohomology fixtures.

// Index loops mirror the matrix formulas; `from_*` on a field instance builds elements of that field.
#![allow(clippy::needless_range_loop, clippy::wrong_self_convention)]

pub mod bialgebra;
pub mod cli;
pub mod diagram;
pub mod endo;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod localization;
pub mod periods;
pub mod report;
pub mod rigidity;
pub mod simplicial;
pub mod torsor;

pub use error::{ArithmeticError, Error, Result};
