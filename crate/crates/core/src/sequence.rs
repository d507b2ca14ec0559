//! Finite-horizon computations in the ring of sequences.
//!
//! Sequences are identified when they agree eventually. A computation can
//! only ever inspect a finite window, so every sequence here is an explicit
//! representative on `[start, horizon]` and every comparison is a statement
//! about the overlap of two such windows.

use std::fmt;

use malachite_base::num::basic::traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{parse_rat, Rat, RatMatrix};
use crate::apset::ApSet;
use crate::error::{Error, Result};
use crate::recurrence::{Equation, LinSystem};

/// Default working horizon.
pub const DEFAULT_HORIZON: u64 = 2000;

/// Exact values `f(start), ..., f(end)` of a sequence.
///
/// Equality compares the window and the values; provenance is ignored.
#[derive(Clone)]
pub struct ExactSeq {
    start: u64,
    values: Vec<Rat>,
    provenance: String,
}

impl PartialEq for ExactSeq {
    fn eq(&self, other: &Self) -> bool {
        self.start == other.start && self.values == other.values
    }
}

impl Eq for ExactSeq {}

impl ExactSeq {
    pub fn new(start: u64, values: Vec<Rat>, provenance: impl Into<String>) -> Self {
        Self {
            start,
            values,
            provenance: provenance.into(),
        }
    }

    pub fn from_fn(start: u64, end: u64, provenance: impl Into<String>, f: impl Fn(u64) -> Rat) -> Self {
        Self::new(start, (start..=end).map(f).collect(), provenance)
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    /// Last defined index; `start - 1` (saturating) when empty.
    pub fn end(&self) -> u64 {
        (self.start + self.values.len() as u64).saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    pub fn get(&self, i: u64) -> Option<&Rat> {
        i.checked_sub(self.start)
            .and_then(|k| self.values.get(k as usize))
    }

    /// Indices with a value, as `(start, end)`.
    pub fn window(&self) -> (u64, u64) {
        (self.start, self.end())
    }

    fn overlap(&self, other: &Self) -> Result<(u64, u64)> {
        if self.is_empty() || other.is_empty() {
            return Err(Error::EmptyOverlap);
        }
        let lo = self.start.max(other.start);
        let hi = self.end().min(other.end());
        if lo > hi {
            return Err(Error::EmptyOverlap);
        }
        Ok((lo, hi))
    }

    fn zip_with(&self, other: &Self, name: &str, op: impl Fn(&Rat, &Rat) -> Rat) -> Result<Self> {
        let (lo, hi) = self.overlap(other)?;
        let values = (lo..=hi)
            .map(|i| op(self.get(i).unwrap(), other.get(i).unwrap()))
            .collect();
        Ok(Self::new(
            lo,
            values,
            format!("({}) {name} ({})", self.provenance, other.provenance),
        ))
    }

    /// Componentwise sum on the overlap.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "+", |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "-", |a, b| a - b)
    }

    /// Componentwise product on the overlap.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "*", |a, b| a * b)
    }

    pub fn map(&self, name: &str, f: impl Fn(&Rat) -> Rat) -> Self {
        Self::new(
            self.start,
            self.values.iter().map(f).collect(),
            format!("{name}({})", self.provenance),
        )
    }

    /// `σ^t(f)`, i.e. `i -> f(i + t)`, on the indices `i >= 0` where it is
    /// defined.
    pub fn shift(&self, t: u64) -> Result<Self> {
        let drop = t.saturating_sub(self.start) as usize;
        if drop >= self.values.len() {
            return Err(Error::EmptyOverlap);
        }
        Ok(Self::new(
            self.start.saturating_sub(t),
            self.values[drop..].to_vec(),
            format!("σ^{t}({})", self.provenance),
        ))
    }

    /// Whether the two sequences agree on their overlap, together with the
    /// window that was checked.
    pub fn agrees_with(&self, other: &Self) -> Result<(bool, (u64, u64))> {
        let (lo, hi) = self.overlap(other)?;
        let ok = (lo..=hi).all(|i| self.get(i) == other.get(i));
        Ok((ok, (lo, hi)))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == 0)
    }
}

impl fmt::Debug for ExactSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<String> = self.values.iter().take(8).map(Rat::to_string).collect();
        write!(
            f,
            "ExactSeq[{}..={}]({}{}) <- {}",
            self.start,
            self.end(),
            head.join(", "),
            if self.values.len() > 8 { ", ..." } else { "" },
            self.provenance
        )
    }
}

#[derive(Serialize, Deserialize)]
struct SeqRepr {
    start: u64,
    values: Vec<String>,
}

impl Serialize for ExactSeq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeqRepr {
            start: self.start,
            values: self.values.iter().map(Rat::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactSeq {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = SeqRepr::deserialize(d)?;
        let values = r
            .values
            .iter()
            .map(|v| parse_rat(v))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Self::new(r.start, values, "json"))
    }
}

/// Least `i0 >= 0` such that for every `i >= i0` all entries of `A` are
/// defined at `i` and `det A(i) != 0`.
///
/// `LinSystem` cannot hold a singular matrix, so this never fails.
pub fn start_index(sys: &LinSystem) -> u64 {
    let mut bad: Vec<i64> = sys
        .matrix()
        .iter()
        .flat_map(|h| h.integer_poles())
        .collect();
    bad.extend(sys.det().num().integer_roots().expect("det is non-zero"));
    bad.extend(sys.det().den().integer_roots().expect("denominator is non-zero"));
    bad.into_iter()
        .filter(|&b| b >= 0)
        .max()
        .map_or(0, |b| b as u64 + 1)
}

/// Fundamental solution matrix `Y` with `Y(i+1) = A(i) Y(i)` on `[i0, horizon]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FundMatrix {
    system: LinSystem,
    i0: u64,
    mats: Vec<RatMatrix>,
}

impl FundMatrix {
    pub fn system(&self) -> &LinSystem {
        &self.system
    }

    pub fn start(&self) -> u64 {
        self.i0
    }

    pub fn horizon(&self) -> u64 {
        self.i0 + self.mats.len() as u64 - 1
    }

    pub fn dim(&self) -> usize {
        self.system.dim()
    }

    pub fn at(&self, i: u64) -> Option<&RatMatrix> {
        i.checked_sub(self.i0).and_then(|k| self.mats.get(k as usize))
    }

    pub fn matrices(&self) -> &[RatMatrix] {
        &self.mats
    }

    /// The `(r, c)` entry as a sequence on `[i0, horizon]`.
    pub fn entry(&self, r: usize, c: usize) -> ExactSeq {
        ExactSeq::new(
            self.i0,
            self.mats.iter().map(|m| m[(r, c)].clone()).collect(),
            format!("Y[{}][{}]", r + 1, c + 1),
        )
    }

    pub fn det(&self) -> ExactSeq {
        ExactSeq::new(self.i0, self.mats.iter().map(RatMatrix::det).collect(), "detY")
    }
}

/// Fundamental matrix seeded at [`start_index`] (identity seed by default).
pub fn fundamental_matrix(
    sys: &LinSystem,
    horizon: u64,
    seed: Option<RatMatrix>,
) -> Result<FundMatrix> {
    fundamental_matrix_at(sys, start_index(sys), horizon, seed)
}

/// Fundamental matrix seeded at an explicit index `i0`. Every step from
/// `i0` up to `horizon` must be defined.
pub fn fundamental_matrix_at(
    sys: &LinSystem,
    i0: u64,
    horizon: u64,
    seed: Option<RatMatrix>,
) -> Result<FundMatrix> {
    if horizon < i0 {
        return Err(Error::HorizonTooSmall { horizon, min: i0 });
    }
    let n = sys.dim();
    let seed = match seed {
        None => RatMatrix::identity(n),
        Some(m) => {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.rows(),
                });
            }
            if m.det() == 0 {
                return Err(Error::SingularMatrix);
            }
            m
        }
    };
    let mut mats = Vec::with_capacity((horizon - i0 + 1) as usize);
    mats.push(seed);
    for i in i0..horizon {
        let a = sys
            .step_matrix(i as i64)
            .ok_or(Error::Undefined { abscissa: i as i64 })?;
        let next = a.mul(mats.last().unwrap());
        mats.push(next);
    }
    Ok(FundMatrix {
        system: sys.clone(),
        i0,
        mats,
    })
}

/// Solution of `E` with `f(s + k) = init[k]` for `k < n`, extended by the
/// recursion up to `horizon`.
pub fn solve_equation(eq: &Equation, init: &[Rat], s: u64, horizon: u64) -> Result<ExactSeq> {
    let n = eq.order();
    if init.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: init.len(),
        });
    }
    let min = s + n as u64;
    if horizon < min {
        return Err(Error::HorizonTooSmall { horizon, min });
    }
    let mut values = init.to_vec();
    values.reserve((horizon - s + 1) as usize - n);
    for i in s..=horizon - n as u64 {
        let k = (i - s) as usize;
        let mut next = Rat::ZERO;
        for (j, h) in eq.coeffs().iter().enumerate() {
            let hv = h.eval(i as i64)?;
            if hv != 0 {
                next -= hv * &values[k + j];
            }
        }
        values.push(next);
    }
    Ok(ExactSeq::new(s, values, format!("solution of {eq}")))
}

/// The constant matrix `C` with `Y2 = Y1 C`, checked at every index both
/// matrices share.
pub fn constant_transition(y1: &FundMatrix, y2: &FundMatrix) -> Result<RatMatrix> {
    if y1.system != y2.system {
        return Err(Error::MismatchedSystems);
    }
    let lo = y1.start().max(y2.start());
    let hi = y1.horizon().min(y2.horizon());
    if lo > hi {
        return Err(Error::EmptyOverlap);
    }
    let c = y1.at(lo).unwrap().inverse()?.mul(y2.at(lo).unwrap());
    for i in lo..=hi {
        if y1.at(i).unwrap().mul(&c) != *y2.at(i).unwrap() {
            return Err(Error::NotConstant { index: i });
        }
    }
    Ok(c)
}

/// Coordinates `v` with `(f(i), ..., f(i+n-1))ᵗ = Y(i) v`, checked at every
/// index where both sides are available.
pub fn solution_coordinates(f: &ExactSeq, y: &FundMatrix) -> Result<Vec<Rat>> {
    let n = y.dim() as u64;
    let lo = f.start().max(y.start());
    let hi = (f.end() + 1).checked_sub(n).map(|e| e.min(y.horizon()));
    let hi = match hi {
        Some(hi) if !f.is_empty() && lo <= hi => hi,
        _ => return Err(Error::EmptyOverlap),
    };
    let stacked = |i: u64| -> Vec<Rat> { (i..i + n).map(|k| f.get(k).unwrap().clone()).collect() };
    let v = y.at(lo).unwrap().inverse()?.mul_vec(&stacked(lo));
    for i in lo..=hi {
        if y.at(i).unwrap().mul_vec(&v) != stacked(i) {
            return Err(Error::NotASolution { index: i });
        }
    }
    Ok(v)
}

/// Indicator of `s` on `[start, end]`.
pub fn indicator_sequence(s: &ApSet, start: u64, end: u64) -> ExactSeq {
    ExactSeq::from_fn(start, end, format!("1[{s}]"), |i| {
        if s.contains(i) {
            Rat::ONE
        } else {
            Rat::ZERO
        }
    })
}
