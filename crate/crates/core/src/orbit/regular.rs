//! Regular functions on `A^1 x GL_n`: elements `p(z, Z) / det(Z)^m` with `p`
//! a polynomial in the matrix entries `Z_ij` whose coefficients lie in `k(z)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use malachite_base::num::arithmetic::traits::Pow;
use malachite_base::num::basic::traits::Zero;
use malachite_nz::integer::Integer;

use crate::algebra::linalg::{clear_denominators, integer_det};
use crate::algebra::{Field, Rat, RatFunc, RatMatrix};
use crate::error::{Error, Result};
use crate::parse::{self, Algebra};
use crate::recurrence::LinSystem;

/// Exponent vector over the `n * n` entries of `Z`, row-major.
type Monomial = Vec<u32>;

/// Sparse polynomial in the entries of `Z` with coefficients in `k(z)`.
/// Zero coefficients are never stored.
type Terms = BTreeMap<Monomial, RatFunc>;

fn add_term(t: &mut Terms, m: Monomial, c: RatFunc) {
    if c.is_zero() {
        return;
    }
    match t.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

fn add(a: &Terms, b: &Terms) -> Terms {
    let mut out = a.clone();
    for (m, c) in b {
        add_term(&mut out, m.clone(), c.clone());
    }
    out
}

fn scale(a: &Terms, c: &RatFunc) -> Terms {
    if c.is_zero() {
        return Terms::new();
    }
    a.iter().map(|(m, x)| (m.clone(), x * c)).collect()
}

fn mul(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            add_term(&mut out, m, ca * cb);
        }
    }
    out
}

fn constant(vars: usize, c: RatFunc) -> Terms {
    let mut t = Terms::new();
    add_term(&mut t, vec![0; vars], c);
    t
}

fn pow(a: &Terms, vars: usize, e: u32) -> Terms {
    (0..e).fold(constant(vars, RatFunc::one()), |acc, _| mul(&acc, a))
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(Vec::new(), false)];
    }
    let mut out = Vec::new();
    for (p, odd) in permutations(n - 1) {
        // insert n-1 at each position; moving it left past k entries adds k
        // transpositions
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push((q, odd ^ ((n - 1 - pos) % 2 == 1)));
        }
    }
    out
}

/// Leibniz expansion of `det Z`.
fn det_terms(n: usize) -> Terms {
    let mut t = Terms::new();
    for (p, odd) in permutations(n) {
        let mut m = vec![0; n * n];
        for (r, &c) in p.iter().enumerate() {
            m[r * n + c] += 1;
        }
        add_term(&mut t, m, RatFunc::from_i64(if odd { -1 } else { 1 }));
    }
    t
}

/// Quotient of `f` by `g` if the division is exact.
///
/// Division by a single polynomial under lex order: `g` divides `f` iff the
/// leading term of every remainder is divisible by the leading term of `g`.
fn divide_exact(f: &Terms, g: &Terms) -> Option<Terms> {
    let (lm_g, lc_g) = g.iter().next_back()?;
    let mut r = f.clone();
    let mut q = Terms::new();
    while let Some((lm, lc)) = r.iter().next_back() {
        if lm.iter().zip(lm_g).any(|(a, b)| a < b) {
            return None;
        }
        let m: Monomial = lm.iter().zip(lm_g).map(|(a, b)| a - b).collect();
        let c = lc.checked_div(lc_g).expect("leading coefficient is non-zero");
        let step = mul(&constant(m.len(), c.clone()), g)
            .into_iter()
            .map(|(k, v)| (k.iter().zip(&m).map(|(x, y)| x + y).collect(), v))
            .collect::<Terms>();
        r = add(&r, &scale(&step, &RatFunc::from_i64(-1)));
        add_term(&mut q, m, c);
    }
    Some(q)
}

/// Multivariate Horner evaluation: `p = p|_{x_k = 0} + x_k * (p - p|_{x_k = 0}) / x_k`,
/// which keeps the number of full-size products close to the number of
/// distinct monomial prefixes.
fn horner(mut terms: Vec<(Monomial, Integer)>, vals: &[Integer], k: usize) -> Integer {
    if terms.is_empty() {
        return Integer::ZERO;
    }
    if k == vals.len() {
        return terms.into_iter().map(|(_, c)| c).sum();
    }
    let (mut with, without): (Vec<_>, Vec<_>) = terms.drain(..).partition(|(m, _)| m[k] > 0);
    for (m, _) in &mut with {
        m[k] -= 1;
    }
    let rest = horner(without, vals, k + 1);
    if with.is_empty() {
        rest
    } else {
        rest + &vals[k] * horner(with, vals, k)
    }
}

/// A regular function `poly / det(Z)^m` on `A^1 x GL_n`.
///
/// The representation is canonical: when `m > 0`, `poly` is not divisible by
/// `det Z` (which is irreducible), so `==` is structural.
#[derive(Clone, PartialEq, Eq)]
pub struct RegularFunction {
    n: usize,
    terms: Terms,
    det_power: u32,
}

impl RegularFunction {
    fn from_parts(n: usize, terms: Terms, det_power: u32) -> Self {
        let mut f = Self {
            n,
            terms,
            det_power,
        };
        f.reduce();
        f
    }

    fn reduce(&mut self) {
        if self.terms.is_empty() {
            self.det_power = 0;
            return;
        }
        let det = det_terms(self.n);
        while self.det_power > 0 {
            match divide_exact(&self.terms, &det) {
                Some(q) => {
                    self.terms = q;
                    self.det_power -= 1;
                }
                None => break,
            }
        }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_ratfunc(n, RatFunc::zero())
    }

    pub fn one(n: usize) -> Self {
        Self::from_ratfunc(n, RatFunc::one())
    }

    /// A function of `z` alone.
    pub fn from_ratfunc(n: usize, c: RatFunc) -> Self {
        Self::from_parts(n, constant(n * n, c), 0)
    }

    /// The coordinate `Z_ij` (0-based indices).
    pub fn entry(n: usize, i: usize, j: usize) -> Self {
        assert!(i < n && j < n, "entry index out of range");
        let mut m = vec![0; n * n];
        m[i * n + j] = 1;
        Self::from_parts(n, Terms::from([(m, RatFunc::one())]), 0)
    }

    /// `det Z`.
    pub fn det(n: usize) -> Self {
        Self::from_parts(n, det_terms(n), 0)
    }

    /// `det(Z)^-m`.
    pub fn inverse_det_power(n: usize, m: u32) -> Self {
        Self::from_parts(n, constant(n * n, RatFunc::one()), m)
    }

    /// Parses the text grammar over `z`, `Z[i][j]` (1-based) and `detZ`,
    /// where `detZ` may carry a negative exponent.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        parse::parse_expr(s, &n)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn det_power(&self) -> u32 {
        self.det_power
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree in the entries of `Z` of the numerator.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    /// The numerator `poly` (the same function with `m = 0`).
    pub fn numerator(&self) -> Self {
        Self {
            n: self.n,
            terms: self.terms.clone(),
            det_power: 0,
        }
    }

    /// Terms `(exponents, coefficient)` of the numerator; exponents are
    /// row-major over the entries of `Z`.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &RatFunc)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    fn lift(&self, m: u32) -> Terms {
        let det = det_terms(self.n);
        let k = m - self.det_power;
        mul(&self.terms, &pow(&det, self.n * self.n, k))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let m = self.det_power.max(other.det_power);
        Ok(Self::from_parts(self.n, add(&self.lift(m), &other.lift(m)), m))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::from_parts(
            self.n,
            mul(&self.terms, &other.terms),
            self.det_power + other.det_power,
        ))
    }

    pub fn neg(&self) -> Self {
        Self {
            n: self.n,
            terms: scale(&self.terms, &RatFunc::from_i64(-1)),
            det_power: self.det_power,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.n), |acc, _| Self::mul(&acc, self).expect("same dimension"))
    }

    /// `1/self` when `self` is a unit: `c(z) det(Z)^k` with `c != 0`.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let det = det_terms(self.n);
        let mut p = self.terms.clone();
        let mut k = 0;
        loop {
            if p.len() == 1 {
                if let Some(c) = p.get(&vec![0; self.n * self.n]) {
                    let inv = RatFunc::one().checked_div(c).ok()?;
                    // (c det^k / det^m)^-1 = det^m / (c det^k)
                    let num = mul(&constant(self.n * self.n, inv), &pow(&det, self.n * self.n, self.det_power));
                    return Some(Self::from_parts(self.n, num, k));
                }
            }
            p = divide_exact(&p, &det)?;
            k += 1;
        }
    }

    /// `f(b, B)`; fails when a coefficient has a pole at `b` or `det B = 0`
    /// with a negative power of `det`.
    pub fn evaluate(&self, b: i64, mat: &RatMatrix) -> Result<Rat> {
        let n = self.n;
        if mat.rows() != n || mat.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: mat.rows(),
            });
        }
        // Work over the common denominator d of B = M / d so that the sum is
        // formed with integer products only: a monomial of degree k becomes
        // c * prod(M^e) * d^(K - k) over the shared denominator L * d^K.
        let (d, ints) = clear_denominators(&mat.iter().collect::<Vec<_>>());
        let coeffs = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m, c.eval(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let (l, scaled) = clear_denominators(&coeffs.iter().map(|(_, c)| c).collect::<Vec<_>>());
        let top = self.degree();
        let d = Integer::from(d);
        let homogeneous: Vec<(Monomial, Integer)> = coeffs
            .iter()
            .zip(scaled)
            .map(|((m, _), c)| {
                let mut h = (*m).clone();
                h.push(top - m.iter().sum::<u32>());
                (h, c)
            })
            .collect();
        let mut vals = ints.clone();
        vals.push(d.clone());
        let mut num = horner(homogeneous, &vals, 0);
        let mut den = Integer::from(l) * (&d).pow(u64::from(top));
        if self.det_power > 0 {
            // det B = det M / d^n
            let det = integer_det(n, &ints);
            if det == 0 {
                return Err(Error::SingularMatrix);
            }
            let d_n = (&d).pow(n as u64);
            for _ in 0..self.det_power {
                num *= &d_n;
                den *= &det;
            }
        }
        Ok(Rat::from_integers(num, den))
    }

    /// The symbolic shift `f(z + 1, A(z) Z)`.
    pub fn sigma_action(&self, sys: &LinSystem) -> Result<Self> {
        let n = self.n;
        if sys.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: sys.dim(),
            });
        }
        let vars = n * n;
        let a = sys.matrix();
        // (A Z)_ij = sum_l A_il Z_lj
        let images: Vec<Terms> = (0..vars)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                let mut t = Terms::new();
                for l in 0..n {
                    let mut m = vec![0; vars];
                    m[l * n + j] = 1;
                    add_term(&mut t, m, a[(i, l)].clone());
                }
                t
            })
            .collect();
        let mut out = Terms::new();
        for (m, c) in &self.terms {
            let mut t = constant(vars, c.shift(1));
            for (img, &e) in images.iter().zip(m) {
                if e > 0 {
                    t = mul(&t, &pow(img, vars, e));
                }
            }
            out = add(&out, &t);
        }
        if self.det_power > 0 {
            let inv = sys.det().inv().expect("system determinant is non-zero");
            out = scale(&out, &RatFunc::pow(&inv, self.det_power));
        }
        Ok(Self::from_parts(n, out, self.det_power))
    }

    /// `f(z + t, Z)`.
    pub fn shift_z(&self, t: i64) -> Self {
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.shift(t))).collect(),
            det_power: self.det_power,
        }
    }

    /// Text of the numerator alone.
    pub fn numerator_text(&self) -> String {
        let mut s = String::new();
        self.fmt_terms(&mut s).expect("writing to a string");
        s
    }

    fn fmt_terms(&self, f: &mut impl fmt::Write) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let n = self.n;
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(v, &e)| {
                    let name = format!("Z[{}][{}]", v / n + 1, v % n + 1);
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            let mono = mono.join("*");
            let (neg, coeff) = match c.as_constant() {
                Some(q) if q < 0 => (true, RatFunc::constant(-q)),
                _ => (false, c.clone()),
            };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let simple = coeff.as_constant().is_some_and(|q| crate::algebra::rat::is_integer(&q));
            let coeff_text = if simple {
                coeff.to_string()
            } else {
                format!("({coeff})")
            };
            match (mono.is_empty(), coeff == RatFunc::one()) {
                (true, _) => write!(f, "{coeff_text}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{coeff_text}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for RegularFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.det_power == 0 {
            return self.fmt_terms(f);
        }
        if self.terms.len() == 1 && self.terms.get(&vec![0; self.n * self.n]) == Some(&RatFunc::one()) {
            return write!(f, "detZ^-{}", self.det_power);
        }
        write!(f, "(")?;
        self.fmt_terms(f)?;
        write!(f, ")*detZ^-{}", self.det_power)
    }
}

impl fmt::Debug for RegularFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RegularFunction[n={}]({self})", self.n)
    }
}

impl Algebra for RegularFunction {
    type Ctx = usize;
    fn integer(n: &usize, v: Integer) -> Self {
        Self::from_ratfunc(*n, RatFunc::constant(Rat::from(v)))
    }
    fn ident(n: &usize, name: &str, indices: &[usize]) -> std::result::Result<Self, String> {
        let n = *n;
        match (name, indices) {
            ("z", []) => Ok(Self::from_ratfunc(n, RatFunc::z())),
            ("detZ", []) => Ok(Self::det(n)),
            ("Z", &[i, j]) if (1..=n).contains(&i) && (1..=n).contains(&j) => Ok(Self::entry(n, i - 1, j - 1)),
            ("Z", &[i, j]) => Err(format!("Z[{i}][{j}] is out of range for {n}x{n} matrices")),
            _ => Err(format!(
                "unknown symbol {name:?}; expected z, Z[i][j] or detZ"
            )),
        }
    }
    fn add(self, rhs: Self) -> Self {
        RegularFunction::add(&self, &rhs).expect("same dimension")
    }
    fn sub(self, rhs: Self) -> Self {
        RegularFunction::sub(&self, &rhs).expect("same dimension")
    }
    fn mul(self, rhs: Self) -> Self {
        RegularFunction::mul(&self, &rhs).expect("same dimension")
    }
    fn neg(self) -> Self {
        RegularFunction::neg(&self)
    }
    fn div(self, rhs: Self) -> std::result::Result<Self, String> {
        let inv = rhs
            .inverse()
            .ok_or("only division by non-zero functions of z and powers of detZ is allowed")?;
        Ok(RegularFunction::mul(&self, &inv).expect("same dimension"))
    }
    fn pow(self, e: i64) -> std::result::Result<Self, String> {
        let base = if e < 0 {
            self.inverse()
                .ok_or("negative exponents are only allowed on detZ and functions of z")?
        } else {
            self
        };
        let e = u32::try_from(e.unsigned_abs()).map_err(|_| "exponent too large".to_string())?;
        Ok(RegularFunction::pow(&base, e))
    }
}

impl FromStr for RegularFunction {
    type Err = Error;
    /// Parses with the dimension inferred from the largest `Z[i][j]` index
    /// (at least 1); use [`RegularFunction::parse`] when `detZ` is involved.
    fn from_str(s: &str) -> Result<Self> {
        let mut n = 1;
        let bytes = s.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i] == b'[' {
                let j = s[i + 1..].find(']').map_or(bytes.len(), |k| i + 1 + k);
                if let Ok(v) = s[i + 1..j].trim().parse::<usize>() {
                    n = n.max(v);
                }
                i = j;
            }
            i += 1;
        }
        Self::parse(s, n)
    }
}
