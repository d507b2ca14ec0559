//! Exact arithmetic over the rationals: numbers, polynomials, rational
//! functions and small dense matrices.

pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod rat;
pub mod ratfunc;

pub use matrix::{MatK, Matrix, RatMatrix};
pub use poly::Poly;
pub use rat::{parse_rat, rat, ratio, Field, Rat};
pub use ratfunc::RatFunc;
