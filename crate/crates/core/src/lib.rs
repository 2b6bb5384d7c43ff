// Index loops read closest to the matrix formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod adjoint;
pub mod baer;
pub mod dp;
pub mod error;
pub mod field;
pub mod individualisation;
pub mod main_algorithm;
pub mod matrix;
pub mod oracle;
pub mod permgroup;
pub mod random;
pub mod stability;
pub mod subspace;
pub mod tensor;

pub use error::{Error, Result};
pub use field::{ArithOp, PrimeField};
pub use matrix::{solve_homogeneous, EchelonBasis, Matrix, Rref};
