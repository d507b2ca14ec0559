//! Eventually periodic subsets of the natural numbers.
//!
//! Every finite union of arithmetic progressions `j + l·N` (singletons
//! included) is described by a threshold `N0`, a modulus `l`, a set of
//! residues mod `l` that governs membership from `N0` on, and the finite set
//! of members below `N0`. The family is closed under union, intersection and
//! complement.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Eventually periodic set: `i` is a member iff `i < threshold` and `i` is in
/// `sporadic`, or `i >= threshold` and `i mod modulus` is in `residues`.
///
/// Values returned by the operations here are canonical: the modulus is the
/// least period of the tail and the threshold is the least index from which
/// the periodic rule holds. Canonical values compare structurally.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ApSetRepr")]
pub struct ApSet {
    threshold: u64,
    modulus: u64,
    residues: BTreeSet<u64>,
    sporadic: BTreeSet<u64>,
}

#[derive(Deserialize)]
struct ApSetRepr {
    threshold: u64,
    modulus: u64,
    residues: BTreeSet<u64>,
    sporadic: BTreeSet<u64>,
}

impl TryFrom<ApSetRepr> for ApSet {
    type Error = String;
    fn try_from(r: ApSetRepr) -> Result<Self, String> {
        if r.modulus == 0 {
            return Err("modulus must be positive".into());
        }
        if let Some(bad) = r.residues.iter().find(|&&x| x >= r.modulus) {
            return Err(format!("residue {bad} is not below modulus {}", r.modulus));
        }
        if let Some(bad) = r.sporadic.iter().find(|&&x| x >= r.threshold) {
            return Err(format!("sporadic point {bad} is not below threshold {}", r.threshold));
        }
        Ok(ApSet {
            threshold: r.threshold,
            modulus: r.modulus,
            residues: r.residues,
            sporadic: r.sporadic,
        })
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    (a / gcd(a, b))
        .checked_mul(b)
        .expect("modulus overflow")
}

impl ApSet {
    /// Builds a set from raw parts and canonicalizes it. Residues are taken
    /// mod `modulus`; sporadic points at or above the threshold are ignored.
    ///
    /// Panics if `modulus == 0`.
    pub fn new(
        threshold: u64,
        modulus: u64,
        residues: impl IntoIterator<Item = u64>,
        sporadic: impl IntoIterator<Item = u64>,
    ) -> Self {
        Self::raw(threshold, modulus, residues, sporadic).canonicalize()
    }

    /// Like [`ApSet::new`] but without canonicalization.
    pub fn raw(
        threshold: u64,
        modulus: u64,
        residues: impl IntoIterator<Item = u64>,
        sporadic: impl IntoIterator<Item = u64>,
    ) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        Self {
            threshold,
            modulus,
            residues: residues.into_iter().map(|r| r % modulus).collect(),
            sporadic: sporadic.into_iter().filter(|&s| s < threshold).collect(),
        }
    }

    pub fn empty() -> Self {
        Self::raw(0, 1, [], [])
    }

    pub fn naturals() -> Self {
        Self::raw(0, 1, [0], [])
    }

    /// `j + l·N`; with `l == 0` this is the singleton `{j}`.
    pub fn progression(j: u64, l: u64) -> Self {
        if l == 0 {
            return Self::finite([j]);
        }
        Self::new(j, l, [j % l], [])
    }

    pub fn finite(points: impl IntoIterator<Item = u64>) -> Self {
        let points: BTreeSet<u64> = points.into_iter().collect();
        let threshold = points.last().map_or(0, |&m| m + 1);
        Self::new(threshold, 1, [], points)
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> &BTreeSet<u64> {
        &self.residues
    }

    pub fn sporadic(&self) -> &BTreeSet<u64> {
        &self.sporadic
    }

    /// Points below the threshold where membership differs from what the
    /// periodic rule alone would give.
    pub fn deviations(&self) -> BTreeSet<u64> {
        (0..self.threshold)
            .filter(|&i| self.sporadic.contains(&i) != self.residues.contains(&(i % self.modulus)))
            .collect()
    }

    /// True when the set is finite (no periodic tail).
    pub fn is_finite(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn contains(&self, i: u64) -> bool {
        if i < self.threshold {
            self.sporadic.contains(&i)
        } else {
            self.residues.contains(&(i % self.modulus))
        }
    }

    /// Unique canonical representative: least tail period, then least
    /// threshold for that period. Idempotent.
    pub fn canonicalize(&self) -> Self {
        let l = self.modulus;
        let period = (1..=l)
            .filter(|d| l.is_multiple_of(*d))
            .find(|&d| (0..l).all(|r| self.residues.contains(&r) == self.residues.contains(&(r % d))))
            .unwrap_or(l);
        let residues: BTreeSet<u64> = self.residues.iter().copied().filter(|&r| r < period).collect();
        let mut sporadic: BTreeSet<u64> = self
            .sporadic
            .iter()
            .copied()
            .filter(|&s| s < self.threshold)
            .collect();
        let mut threshold = self.threshold;
        while threshold > 0 {
            let i = threshold - 1;
            if sporadic.contains(&i) != residues.contains(&(i % period)) {
                break;
            }
            sporadic.remove(&i);
            threshold = i;
        }
        Self {
            threshold,
            modulus: period,
            residues,
            sporadic,
        }
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Self {
        let l = lcm(self.modulus, other.modulus);
        let n = self.threshold.max(other.threshold);
        let residues = (0..l).filter(|&r| {
            let rep = n + (r + l - n % l) % l;
            op(self.contains(rep), other.contains(rep))
        });
        let sporadic = (0..n).filter(|&i| op(self.contains(i), other.contains(i)));
        Self::new(n, l, residues.collect::<Vec<_>>(), sporadic.collect::<Vec<_>>())
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && b)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a || b)
    }

    pub fn complement(&self) -> Self {
        Self::new(
            self.threshold,
            self.modulus,
            (0..self.modulus)
                .filter(|r| !self.residues.contains(r))
                .collect::<Vec<_>>(),
            (0..self.threshold)
                .filter(|i| !self.sporadic.contains(i))
                .collect::<Vec<_>>(),
        )
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersect(&other.complement())
    }

    /// True iff the symmetric difference is finite, i.e. the canonical
    /// tails coincide.
    pub fn equal_mod_finite(&self, other: &Self) -> bool {
        let (a, b) = (self.canonicalize(), other.canonicalize());
        a.modulus == b.modulus && a.residues == b.residues
    }

    /// Members in `[from, to]`.
    pub fn members_in(&self, from: u64, to: u64) -> impl Iterator<Item = u64> + '_ {
        (from..=to).filter(move |&i| self.contains(i))
    }
}

impl fmt::Display for ApSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &BTreeSet<u64>| {
            s.iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        let finite_part = format!("{{{}}}", join(&self.sporadic));
        if self.residues.is_empty() {
            return write!(f, "{finite_part}");
        }
        let tail = if self.modulus == 1 {
            format!("{{i >= {}}}", self.threshold)
        } else {
            format!(
                "{{i >= {} : i mod {} in {{{}}}}}",
                self.threshold,
                self.modulus,
                join(&self.residues)
            )
        };
        if self.sporadic.is_empty() {
            write!(f, "{tail}")
        } else {
            write!(f, "{finite_part} u {tail}")
        }
    }
}

impl fmt::Debug for ApSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ApSet {{ threshold: {}, modulus: {}, residues: {:?}, sporadic: {:?} }}",
            self.threshold, self.modulus, self.residues, self.sporadic
        )
    }
}
