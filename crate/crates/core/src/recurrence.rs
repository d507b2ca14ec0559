//! Scalar linear difference equations over `K = k(z)`, first-order systems
//! `σ(y) = A y`, and recovery of recurrences from sequence values.

use std::fmt;

use malachite_base::num::basic::traits::{One, Zero};

use crate::algebra::linalg::nullspace;
use crate::algebra::{MatK, Matrix, Poly, Rat, RatFunc, RatMatrix};
use crate::error::{Error, Result};

/// `σ^n(y) + h_{n-1} σ^{n-1}(y) + ... + h_0 y` with `h_0 != 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    coeffs: Vec<RatFunc>,
}

impl Equation {
    /// `coeffs` are `h_0, ..., h_{n-1}`.
    pub fn new(coeffs: Vec<RatFunc>) -> Result<Self> {
        match coeffs.first() {
            None => Err(Error::InvalidEquation("order must be at least 1".into())),
            Some(h0) if h0.is_zero() => Err(Error::InvalidEquation(
                "h_0 must be non-zero (reduce the order first)".into(),
            )),
            Some(_) => Ok(Self { coeffs }),
        }
    }

    /// Parses coefficient strings `h_0, ..., h_{n-1}`.
    pub fn parse<S: AsRef<str>>(coeffs: &[S]) -> Result<Self> {
        Self::new(
            coeffs
                .iter()
                .map(|s| s.as_ref().parse())
                .collect::<Result<_>>()?,
        )
    }

    /// `σ²(y) − σ(y) − y`.
    pub fn fibonacci() -> Self {
        Self::new(vec![RatFunc::from_i64(-1), RatFunc::from_i64(-1)]).unwrap()
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    /// The first-order system `σ(y) = A(E) y`: ones on the superdiagonal and
    /// last row `(-h_0, ..., -h_{n-1})`. `det A(E) = (-1)^n h_0`.
    pub fn companion_matrix(&self) -> LinSystem {
        let n = self.order();
        let mut a = MatK::zeros(n, n);
        for i in 0..n - 1 {
            a[(i, i + 1)] = RatFunc::one();
        }
        for (j, h) in self.coeffs.iter().enumerate() {
            a[(n - 1, j)] = -h;
        }
        LinSystem::new(a).expect("companion matrix of a valid equation is invertible")
    }

    /// Polynomial `h_1, ..., h_{n-1}` and non-zero constant `h_0`.
    pub fn is_bell_case(&self) -> bool {
        self.coeffs[0].as_constant().is_some_and(|c| c != 0)
            && self.coeffs[1..].iter().all(RatFunc::is_polynomial)
    }

    /// Integer points where some coefficient has a pole.
    pub fn poles(&self) -> std::collections::BTreeSet<i64> {
        self.coeffs.iter().flat_map(RatFunc::integer_poles).collect()
    }

    /// `f(i+n) + Σ h_j(i) f(i+j)` for a window `window = [f(i), ..., f(i+n)]`.
    pub fn residual(&self, i: i64, window: &[Rat]) -> Result<Rat> {
        assert_eq!(window.len(), self.order() + 1);
        let mut acc = window[self.order()].clone();
        for (h, f) in self.coeffs.iter().zip(window) {
            acc += h.eval(i)? * f;
        }
        Ok(acc)
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order();
        let term = |k: usize| match k {
            0 => "y".to_string(),
            1 => "σ(y)".to_string(),
            _ => format!("σ^{k}(y)"),
        };
        write!(f, "{}", term(n))?;
        for k in (0..n).rev() {
            let h = &self.coeffs[k];
            if h.is_zero() {
                continue;
            }
            write!(f, " + ({h})*{}", term(k))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Equation({self})")
    }
}

/// The system `σ(y) = A y` with `A ∈ GL_n(k(z))`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinSystem {
    a: MatK,
    det: RatFunc,
}

impl LinSystem {
    pub fn new(a: MatK) -> Result<Self> {
        if !a.is_square() || a.rows() == 0 {
            return Err(Error::DimensionMismatch {
                expected: a.rows().max(1),
                found: a.cols(),
            });
        }
        let det = a.det();
        if det.is_zero() {
            return Err(Error::SingularSystem);
        }
        Ok(Self { a, det })
    }

    pub fn parse<S: AsRef<str>>(rows: &[Vec<S>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| s.as_ref().parse()).collect::<Result<Vec<RatFunc>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(Matrix::from_rows(rows)?)
    }

    pub fn matrix(&self) -> &MatK {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn det(&self) -> &RatFunc {
        &self.det
    }

    /// `A(i)` when every entry is defined at `i` and `det A(i) != 0`.
    pub fn step_matrix(&self, i: i64) -> Option<RatMatrix> {
        let m = self.a.eval(i).ok()?;
        match self.det.eval(i) {
            Ok(d) if d != 0 => Some(m),
            _ => None,
        }
    }

    /// Polynomial entries with non-zero constant determinant.
    pub fn is_bell_case(&self) -> bool {
        self.a.is_polynomial() && self.det.as_constant().is_some_and(|c| c != 0)
    }

    /// `A(z + b)`.
    pub fn rebase(&self, b: i64) -> Self {
        Self {
            a: self.a.shift(b),
            det: self.det.shift(b),
        }
    }
}

impl fmt::Display for LinSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.a)
    }
}

impl fmt::Debug for LinSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinSystem({self})")
    }
}

/// A relation `Σ_{j=0}^{r} c_j(i) f(i+j) = 0` recovered from data, with the
/// leading polynomial `c_r` monic. Indices `i` are absolute positions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GuessedRelation {
    pub start: u64,
    pub degree: usize,
    pub polys: Vec<Poly>,
}

impl GuessedRelation {
    pub fn order(&self) -> usize {
        self.polys.len() - 1
    }

    /// Checks the relation at every index whose stencil lies inside the data.
    pub fn holds_on(&self, start: u64, values: &[Rat]) -> bool {
        let r = self.order();
        (0..values.len().saturating_sub(r)).all(|p| {
            let i = (start + p as u64) as i64;
            let x = Rat::from(i);
            let sum: Rat = self
                .polys
                .iter()
                .enumerate()
                .map(|(j, c)| c.eval(&x) * &values[p + j])
                .sum();
            sum == 0
        })
    }

    /// The monic equation `σ^r(y) + Σ (c_j/c_r) σ^j(y)`.
    pub fn to_equation(&self) -> Result<Equation> {
        let lead = self.polys.last().expect("non-empty relation");
        let coeffs = self.polys[..self.order()]
            .iter()
            .map(|c| RatFunc::new(c.clone(), lead.clone()))
            .collect::<Result<Vec<_>>>()?;
        Equation::new(coeffs)
    }
}

impl fmt::Display for GuessedRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.polys.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*f(i+{j})")?;
        }
        write!(f, " = 0")
    }
}

/// Length of the held-out validation window for the given bounds.
pub fn validation_margin(max_order: usize, max_degree: usize) -> usize {
    10.max(2 * (max_order + max_degree))
}

/// Minimum number of values [`guess_recurrence`] accepts.
pub fn required_values(max_order: usize, max_degree: usize) -> usize {
    (max_order + 1) * (max_degree + 1) + max_order + validation_margin(max_order, max_degree)
}

fn stencil_row(values: &[Rat], start: u64, p: usize, order: usize, degree: usize) -> Vec<Rat> {
    let i = Rat::from(start + p as u64);
    let mut row = Vec::with_capacity((order + 1) * (degree + 1));
    for j in 0..=order {
        let mut pw = values[p + j].clone();
        for _ in 0..=degree {
            row.push(pw.clone());
            pw *= &i;
        }
    }
    row
}

fn combine(basis: &[Vec<Rat>], coeffs: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::ZERO; basis[0].len()];
    for (b, c) in basis.iter().zip(coeffs) {
        if *c == 0 {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            *o += x * c;
        }
    }
    out
}

fn split_polys(v: &[Rat], order: usize, degree: usize) -> Vec<Poly> {
    (0..=order)
        .map(|j| Poly::from_coeffs(v[j * (degree + 1)..(j + 1) * (degree + 1)].to_vec()))
        .collect()
}

/// Degree vectors `(deg c_0, ..., deg c_order)` in lexicographic order, with
/// `-1` standing for the zero polynomial.
fn degree_vectors(order: usize, degree: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..=order {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-1..=degree as i64).map(move |d| {
                    let mut w = v.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    out
}

/// The member of `span(valid)` with the lexicographically smallest degree
/// vector, preferring relations with `c_0 != 0` and `c_order != 0`. If that
/// degree vector still leaves several choices, the first basis vector of
/// the restricted space is taken.
fn lex_least(valid: &[Vec<Rat>], order: usize, degree: usize) -> Vec<Rat> {
    if valid.len() == 1 {
        return valid[0].clone();
    }
    let vectors = degree_vectors(order, degree);
    let proper = vectors.iter().filter(|d| d[0] >= 0 && d[order] >= 0);
    for dv in proper.chain(vectors.iter()) {
        // coefficients above the allowed degree must vanish
        let rows: Vec<Vec<Rat>> = dv
            .iter()
            .enumerate()
            .flat_map(|(j, &dj)| ((dj + 1) as usize..=degree).map(move |t| j * (degree + 1) + t))
            .map(|p| valid.iter().map(|v| v[p].clone()).collect())
            .collect();
        if let Some(c) = nullspace(&rows, valid.len()).first() {
            return combine(valid, c);
        }
    }
    valid[0].clone()
}

/// Searches for the relation of least order, then least degree, with
/// polynomial coefficients of degree at most `max_degree`, satisfied by
/// `values` (positions `start, start+1, ...`).
///
/// Candidates are fitted on all but the last [`validation_margin`] values;
/// the held-out tail must also be satisfied, which rejects kernel vectors
/// that only fit by accident. Returns `Ok(None)` if nothing fits within the
/// bounds. Among relations of the same order and degree bound, the one with
/// the lexicographically smallest degree vector is returned.
pub fn guess_recurrence(
    start: u64,
    values: &[Rat],
    max_order: usize,
    max_degree: usize,
) -> Result<Option<GuessedRelation>> {
    let needed = required_values(max_order, max_degree);
    if values.len() < needed {
        return Err(Error::InsufficientData {
            needed,
            got: values.len(),
        });
    }
    let fit_len = values.len() - validation_margin(max_order, max_degree);

    for order in 1..=max_order {
        for degree in 0..=max_degree {
            let cols = (order + 1) * (degree + 1);
            let fit: Vec<Vec<Rat>> = (0..fit_len - order)
                .map(|p| stencil_row(values, start, p, order, degree))
                .collect();
            let kernel = nullspace(&fit, cols);
            if kernel.is_empty() {
                continue;
            }
            // restrict the kernel to vectors that also satisfy the held-out rows
            let held: Vec<Vec<Rat>> = (fit_len - order..values.len() - order)
                .map(|p| {
                    let row = stencil_row(values, start, p, order, degree);
                    kernel
                        .iter()
                        .map(|k| row.iter().zip(k).map(|(a, b)| a * b).sum())
                        .collect()
                })
                .collect();
            let combos = nullspace(&held, kernel.len());
            if combos.is_empty() {
                continue;
            }
            let valid: Vec<Vec<Rat>> = combos.iter().map(|c| combine(&kernel, c)).collect();
            let mut polys = split_polys(&lex_least(&valid, order, degree), order, degree);
            while polys.last().is_some_and(Poly::is_zero) {
                polys.pop();
            }
            if polys.len() < 2 {
                // degenerate relation c_0(i) f(i) = 0
                continue;
            }
            let lc = Rat::ONE / polys.last().unwrap().leading().unwrap();
            let polys: Vec<Poly> = polys.iter().map(|p| p.scale(&lc)).collect();
            let rel = GuessedRelation {
                start,
                degree,
                polys,
            };
            if rel.holds_on(start, values) {
                return Ok(Some(rel));
            }
        }
    }
    Ok(None)
}
