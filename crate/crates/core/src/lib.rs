//! Exact dual volumes and dual mixed volumes of polytopes.
//!
//! Everything is computed over arbitrary-precision rationals. Rational
//! functions are kept as sums of fractions with linear-form denominators and
//! compared exactly.

pub mod affine;
pub mod dualvol;
pub mod error;
pub mod exactnum;
pub mod families;
pub mod geometry;
pub mod io;
pub mod mixed;
pub mod random;
pub mod symfun;

pub use error::{Error, Result};
pub use exactnum::{Rational, RationalMatrix, RationalVector};
pub use symfun::{LinearForm, RationalFunction, SparsePolynomial, VariableTable};
