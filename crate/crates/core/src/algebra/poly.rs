//! Dense univariate polynomials over the rationals.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use malachite_base::num::arithmetic::traits::{Ceiling, DivisibleBy, UnsignedAbs};
use malachite_base::num::basic::traits::{One, Zero};
use malachite_nz::integer::Integer;
use malachite_nz::natural::Natural;

use super::rat::{is_integer, Rat};
use crate::error::{Error, Result};

/// Polynomial in `z` with rational coefficients; `coeffs[k]` is the
/// coefficient of `z^k` and the last entry is never zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::ONE)
    }

    /// The indeterminate `z`.
    pub fn z() -> Self {
        Self {
            coeffs: vec![Rat::ZERO, Rat::ONE],
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::ZERO; k];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| *c == Rat::ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rat::from(c)).collect())
    }

    /// Polynomial with the given roots, `(z - r_1)(z - r_2)...`.
    pub fn from_roots(roots: &[i64]) -> Self {
        roots.iter().fold(Self::one(), |acc, &r| {
            &acc * &Self::from_coeffs(vec![Rat::from(-r), Rat::ONE])
        })
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or(Rat::ZERO)
    }

    /// Degree, or `None` for the zero polynomial (degree minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Rat::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if *c == Rat::ZERO {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides by the leading coefficient; the zero polynomial is returned as is.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&(Rat::ONE / lc)),
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::ZERO;
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn eval_i64(&self, x: i64) -> Rat {
        self.eval(&Rat::from(x))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dl = divisor.leading().expect("polynomial division by zero");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rat::ZERO; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / dl;
            if c != Rat::ZERO {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            // keep the intermediate remainders small
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `p(z + t)` via Horner composition.
    pub fn shift(&self, t: &Rat) -> Self {
        if *t == Rat::ZERO || self.is_constant() {
            return self.clone();
        }
        let lin = Self::from_coeffs(vec![t.clone(), Rat::ONE]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn shift_i64(&self, t: i64) -> Self {
        self.shift(&Rat::from(t))
    }

    /// Least common multiple of the coefficient denominators.
    fn denominator_lcm(&self) -> Natural {
        use malachite_base::num::arithmetic::traits::Lcm;
        self.coeffs
            .iter()
            .fold(Natural::ONE, |acc, c| acc.lcm(c.denominator_ref()))
    }

    /// Integer coefficients of a rational multiple of `self`.
    pub fn integer_coeffs(&self) -> Vec<Integer> {
        let l = Rat::from(self.denominator_lcm());
        self.coeffs
            .iter()
            .map(|c| {
                let v = c * &l;
                debug_assert!(is_integer(&v));
                Integer::try_from(v).expect("cleared denominator")
            })
            .collect()
    }

    /// All integer roots, by the rational-root divisor test on the
    /// denominator-free polynomial after factoring out powers of `z`.
    pub fn integer_roots(&self) -> Result<BTreeSet<i64>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let ints = self.integer_coeffs();
        let mut roots = BTreeSet::new();
        let low = ints.iter().take_while(|c| **c == 0).count();
        if low > 0 {
            roots.insert(0);
        }
        let q = &ints[low..];
        if q.len() <= 1 {
            return Ok(roots);
        }
        let c0 = q[0].clone().unsigned_abs();
        let lead = Rat::from(q[q.len() - 1].clone().unsigned_abs());
        let max_ratio = q[..q.len() - 1]
            .iter()
            .map(|c| Rat::from(c.clone().unsigned_abs()) / &lead)
            .max()
            .unwrap_or(Rat::ZERO);
        // Cauchy bound: every root r has |r| <= 1 + max |q_i / q_n|
        let bound = Natural::try_from((max_ratio + Rat::ONE).ceiling()).expect("positive bound");

        let eval_int = |r: &Integer| -> bool {
            let mut acc = Integer::ZERO;
            for c in q.iter().rev() {
                acc *= r;
                acc += c;
            }
            acc == 0
        };
        let mut test = |cand: &Natural| {
            if *cand > bound {
                return;
            }
            for r in [Integer::from(cand.clone()), -Integer::from(cand.clone())] {
                if eval_int(&r) {
                    if let Ok(v) = i64::try_from(&r) {
                        roots.insert(v);
                    }
                }
            }
        };
        let mut d = Natural::ONE;
        while &d * &d <= c0 && d <= bound {
            if (&c0).divisible_by(&d) {
                test(&d);
                test(&(&c0 / &d));
            }
            d += Natural::ONE;
        }
        Ok(roots)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == Rat::ZERO {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

pub(crate) fn fmt_coeff_term(
    f: &mut fmt::Formatter<'_>,
    c: &Rat,
    var: Option<String>,
    first: bool,
) -> fmt::Result {
    let neg = *c < 0;
    let abs = if neg { -c } else { c.clone() };
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {} ", if neg { '-' } else { '+' })?;
    }
    match var {
        None => write!(f, "{abs}"),
        Some(v) if abs == Rat::ONE => write!(f, "{v}"),
        Some(v) if is_integer(&abs) => write!(f, "{abs}*{v}"),
        Some(v) => write!(f, "({abs})*{v}"),
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if *c == Rat::ZERO {
                continue;
            }
            let var = match k {
                0 => None,
                1 => Some("z".to_string()),
                _ => Some(format!("z^{k}")),
            };
            fmt_coeff_term(f, c, var, first)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
