//! Rational functions in `z`, the coefficient field `k(z)` with the shift
//! `z -> z + 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use malachite_base::num::basic::traits::{One, Zero};
use malachite_nz::integer::Integer;

use super::poly::Poly;
use super::rat::{Field, Rat};
use crate::error::{Error, Result};
use crate::parse::{self, Algebra};

/// Reduced fraction `num / den` with `den` monic and coprime to `num`.
/// Canonical form makes `==` a structural comparison.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc = Rat::ONE / den.leading().expect("nonzero denominator");
        Ok(Self {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn zero() -> Self {
        Self {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rat::ONE)
    }

    pub fn z() -> Self {
        Self::from(Poly::z())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from(Poly::constant(c))
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(Rat::from(c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        (self.is_polynomial() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    /// Value at an integer point, or [`Error::Pole`] if the denominator
    /// vanishes there.
    pub fn eval(&self, i: i64) -> Result<Rat> {
        let x = Rat::from(i);
        let d = self.den.eval(&x);
        if d == Rat::ZERO {
            return Err(Error::Pole { at: i });
        }
        Ok(self.num.eval(&x) / d)
    }

    /// `h(z + t)`. Shifting preserves coprimality and the leading
    /// coefficient, so no re-reduction is needed.
    pub fn shift(&self, t: i64) -> Self {
        let t = Rat::from(t);
        Self {
            num: self.num.shift(&t),
            den: self.den.shift(&t),
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn pow(&self, e: u32) -> Self {
        Self {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Integer points where the function is undefined.
    pub fn integer_poles(&self) -> std::collections::BTreeSet<i64> {
        self.den.integer_roots().expect("denominator is nonzero")
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Poly> for RatFunc {
    fn from(num: Poly) -> Self {
        Self {
            num,
            den: Poly::one(),
        }
    }
}

impl From<Rat> for RatFunc {
    fn from(c: Rat) -> Self {
        Self::constant(c)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .unwrap()
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFunc::from(&self.num * &rhs.num);
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
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
        RatFunc::one().checked_div(self).ok()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly| {
            let single = p.coeffs().iter().filter(|c| **c != Rat::ZERO).count() <= 1
                && p.coeffs().iter().all(|c| *c >= 0 && super::rat::is_integer(c));
            if single {
                p.to_string()
            } else {
                format!("({p})")
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl Algebra for RatFunc {
    type Ctx = ();
    fn integer(_: &(), n: Integer) -> Self {
        RatFunc::constant(Rat::from(n))
    }
    fn ident(_: &(), name: &str, indices: &[usize]) -> std::result::Result<Self, String> {
        match (name, indices) {
            ("z", []) => Ok(RatFunc::z()),
            _ => Err(format!("unknown symbol {name:?}; only `z` is allowed")),
        }
    }
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
    fn neg(self) -> Self {
        -&self
    }
    fn div(self, rhs: Self) -> std::result::Result<Self, String> {
        self.checked_div(&rhs)
            .map_err(|_| "division by the zero polynomial".to_string())
    }
    fn pow(self, e: i64) -> std::result::Result<Self, String> {
        u32::try_from(e)
            .map(|e| RatFunc::pow(&self, e))
            .map_err(|_| "exponent must be a non-negative integer".to_string())
    }
}

impl FromStr for RatFunc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse::parse_expr(s, &())
    }
}
