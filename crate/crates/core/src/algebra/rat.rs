//! Arbitrary-precision rationals and the small field abstraction shared by
//! the dense matrix code.

use std::fmt::Debug;
use std::str::FromStr;

use malachite_base::num::arithmetic::traits::Reciprocal;
use malachite_base::num::basic::traits::{One, Zero};
use malachite_nz::natural::Natural;

use crate::error::{Error, Result};

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
pub type Rat = malachite_q::Rational;

pub fn rat(n: i64) -> Rat {
    Rat::from(n)
}

/// `n / d`; panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::from_signeds(n, d)
}

pub fn is_integer(x: &Rat) -> bool {
    *x.denominator_ref() == Natural::ONE
}

/// Parses `p`, `-p` or `p/q` (whitespace around tokens allowed).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty rational".into(),
        });
    }
    if let Some((n, d)) = compact.split_once('/') {
        if d.starts_with(['-', '+']) {
            return Err(Error::Parse {
                pos: compact.find('/').unwrap() + 1,
                msg: "denominator must be unsigned".into(),
            });
        }
        let d = malachite_nz::integer::Integer::from_str(d).map_err(|_| Error::Parse {
            pos: compact.find('/').unwrap() + 1,
            msg: format!("invalid denominator {d:?}"),
        })?;
        if d == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = malachite_nz::integer::Integer::from_str(n.trim_start_matches('+')).map_err(
            |_| Error::Parse {
                pos: 0,
                msg: format!("invalid numerator {n:?}"),
            },
        )?;
        Ok(Rat::from_integers(n, d))
    } else {
        let n = malachite_nz::integer::Integer::from_str(compact.trim_start_matches('+'))
            .map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("invalid rational {compact:?}"),
            })?;
        Ok(Rat::from(n))
    }
}

/// Minimal field interface used by the generic matrix routines.
pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
}

impl Field for Rat {
    fn zero() -> Self {
        Rat::ZERO
    }
    fn one() -> Self {
        Rat::ONE
    }
    fn is_zero(&self) -> bool {
        *self == Rat::ZERO
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            None
        } else {
            Some(self.reciprocal())
        }
    }
}
