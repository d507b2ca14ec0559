//! Exact linear difference equations with rational-function coefficients.
//!
//! The crate builds solutions and fundamental matrices as exact sequences,
//! decomposes zero sets into eventually periodic sets, and evaluates regular
//! functions along orbits of the map `(b, B) -> (b + 1, A(b) B)` on
//! `A^1 x GL_n`.

pub mod algebra;
pub mod apset;
pub mod error;
pub mod json;
pub mod orbit;
mod parse;
pub mod recurrence;
pub mod sequence;
pub mod zeros;

pub use algebra::{MatK, Matrix, Poly, Rat, RatFunc, RatMatrix};
pub use apset::ApSet;
pub use error::{Error, Result};
pub use orbit::{OrbitState, OrbitTrace, RegularFunction, Subvariety};
pub use recurrence::{Equation, GuessedRelation, LinSystem};
pub use sequence::{ExactSeq, FundMatrix};
pub use zeros::{Decomposition, PeriodBound, Status};
