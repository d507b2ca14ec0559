//! Zero sets of exact sequences, their conjectural decomposition into
//! eventually periodic sets, and empirical lower bounds for the period of
//! the ring generated by a fundamental matrix.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::Rat;
use crate::apset::ApSet;
use crate::error::{Error, Result};
use crate::recurrence::LinSystem;
use crate::sequence::{fundamental_matrix, ExactSeq};

pub const DEFAULT_MAX_PERIOD: u64 = 60;
pub const DEFAULT_WINDOW: u64 = 400;

/// Distinct repeated values per candidate that are turned into shifted
/// candidates `g - c` by [`pv_period_lower_bound`].
const MAX_LEVELS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// No zeros in the verification window: the result is the finite set of
    /// zeros observed.
    ExactFinite,
    /// A periodic tail fits the whole verification window.
    Conjectured,
    /// No period up to the bound fits the verification window.
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::ExactFinite => "exact-finite",
            Status::Conjectured => "conjectured",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecomposeParams {
    pub max_period: u64,
    pub window: u64,
}

impl Default for DecomposeParams {
    fn default() -> Self {
        Self {
            max_period: DEFAULT_MAX_PERIOD,
            window: DEFAULT_WINDOW,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub apset: ApSet,
    pub status: Status,
    /// Least period fitting the verification window (`None` if inconclusive).
    pub period: Option<u64>,
    /// Indices inspected, `[start, horizon]`.
    pub window: (u64, u64),
    /// The verification window `[horizon - V, horizon]`.
    pub verification: (u64, u64),
    pub periods_checked: u64,
}

/// Indices in `[start, end]` where the sequence vanishes.
pub fn zero_set(f: &ExactSeq) -> BTreeSet<u64> {
    f.values()
        .iter()
        .enumerate()
        .filter(|(_, v)| **v == 0)
        .map(|(k, _)| f.start() + k as u64)
        .collect()
}

/// Fits an eventually periodic set to the zeros of `f`.
///
/// The least `l <= max_period` for which zero membership on the last
/// `window + 1` indices depends only on `i mod l` is chosen; the periodic
/// rule is then pushed back below the window as far as the data agrees, and
/// earlier zeros become sporadic points. The returned set matches the zeros
/// of `f` exactly on `[start, horizon]`.
pub fn decompose_zero_set(f: &ExactSeq, params: DecomposeParams) -> Result<Decomposition> {
    let DecomposeParams { max_period, window } = params;
    let (s, h) = f.window();
    let span = if f.is_empty() { 0 } else { h - s };
    if f.is_empty() || span < 4 * window || window < 2 * max_period || max_period == 0 {
        return Err(Error::WindowTooSmall {
            span,
            window,
            max_period,
        });
    }
    let zeros: Vec<bool> = f.values().iter().map(|v| *v == 0).collect();
    let z = |i: u64| zeros[(i - s) as usize];
    let lo = h - window;

    let fitted = (1..=max_period).find(|&l| (lo..=h - l).all(|i| z(i) == z(i + l)));
    let base = Decomposition {
        apset: ApSet::finite(zero_set(f)),
        status: Status::Inconclusive,
        period: None,
        window: (s, h),
        verification: (lo, h),
        periods_checked: max_period,
    };
    let Some(l) = fitted else {
        return Ok(base);
    };
    let residues: BTreeSet<u64> = (h + 1 - l..=h).filter(|&i| z(i)).map(|i| i % l).collect();
    let mut threshold = lo;
    while threshold > s && z(threshold - 1) == residues.contains(&((threshold - 1) % l)) {
        threshold -= 1;
    }
    let sporadic: Vec<u64> = (s..threshold).filter(|&i| z(i)).collect();
    let apset = ApSet::new(threshold, l, residues.iter().copied(), sporadic);
    let status = if apset.is_finite() {
        Status::ExactFinite
    } else {
        Status::Conjectured
    };
    Ok(Decomposition {
        period: Some(apset.modulus()),
        apset,
        status,
        ..base
    })
}

/// True iff each set's tail modulus divides `l`, i.e. each set is a finite
/// union of progressions of period `l` (finite sets always qualify).
pub fn verify_period_bound(sets: &[ApSet], l: u64) -> bool {
    l > 0 && sets.iter().all(|s| {
        let c = s.canonicalize();
        c.is_finite() || l.is_multiple_of(c.modulus())
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: String,
    pub apset: ApSet,
    pub period: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodBound {
    /// lcm of the periods of all conjectured tails.
    pub period: u64,
    /// Candidates whose zero sets have a tail of period greater than one.
    pub witnesses: Vec<Witness>,
    pub candidates_checked: usize,
    /// Candidates for which no period fitted.
    pub inconclusive: Vec<String>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Monomials of total degree `2..=d` in `vars` variables, as sorted index
/// multisets.
fn higher_monomials(vars: usize, d: u32) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<usize>> = (0..vars).map(|v| vec![v]).collect();
    for _ in 2..=d {
        frontier = frontier
            .iter()
            .flat_map(|m| {
                let last = *m.last().unwrap();
                (last..vars).map(move |v| {
                    let mut next = m.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
        out.extend(frontier.iter().cloned());
    }
    out
}

fn monomial_label(names: &[String], m: &[usize]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut k = 0;
    while k < m.len() {
        let run = m[k..].iter().take_while(|&&v| v == m[k]).count();
        parts.push(if run == 1 {
            names[m[k]].clone()
        } else {
            format!("{}^{run}", names[m[k]])
        });
        k += run;
    }
    parts.join("*")
}

/// Values repeated at least twice in the last `window + 1` entries, in order
/// of first appearance, capped at [`MAX_LEVELS`].
fn repeated_levels(g: &ExactSeq, window: u64) -> Vec<Rat> {
    let vals = g.values();
    let from = vals.len().saturating_sub(window as usize + 1);
    let tail = &vals[from..];
    let mut seen: Vec<Rat> = Vec::new();
    for v in tail {
        if *v != 0 && !seen.contains(v) && tail.iter().filter(|w| *w == v).nth(1).is_some() {
            seen.push(v.clone());
            if seen.len() == MAX_LEVELS {
                break;
            }
        }
    }
    seen
}

/// Empirical lower bound for the period of the ring generated by a
/// fundamental matrix of `sys` (and the inverse of its determinant).
///
/// Candidate ring elements are the entries of `Y`, `det Y`, the monomials of
/// total degree up to `degree_bound` in the entries, and for each of these
/// `g - c` for every value `c` that `g` repeats inside the verification
/// window. The lcm of the periods of all conjectured zero-set tails is a
/// lower bound for the true period; it is never an upper bound.
pub fn pv_period_lower_bound(
    sys: &LinSystem,
    degree_bound: u32,
    horizon: u64,
    params: DecomposeParams,
) -> Result<PeriodBound> {
    let y = fundamental_matrix(sys, horizon, None)?;
    let n = sys.dim();
    let entries: Vec<ExactSeq> = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .map(|(r, c)| y.entry(r, c))
        .collect();
    let names: Vec<String> = entries.iter().map(|e| e.provenance().to_string()).collect();

    let mut base: Vec<(String, ExactSeq)> = names.iter().cloned().zip(entries.iter().cloned()).collect();
    base.push(("detY".into(), y.det()));
    for m in higher_monomials(entries.len(), degree_bound.max(1)) {
        let seq = m[1..]
            .iter()
            .try_fold(entries[m[0]].clone(), |acc, &v| acc.mul(&entries[v]))?;
        base.push((monomial_label(&names, &m), seq));
    }

    let mut candidates: Vec<(String, ExactSeq)> = Vec::new();
    for (label, g) in base {
        for c in repeated_levels(&g, params.window) {
            let shifted = g.map("shift", |v| v - &c);
            let label = if c > 0 {
                format!("{label} - {c}")
            } else {
                format!("{label} + {}", -&c)
            };
            candidates.push((label, shifted));
        }
        candidates.push((label, g));
    }

    let results: Vec<(String, Decomposition)> = candidates
        .par_iter()
        .map(|(label, g)| decompose_zero_set(g, params).map(|d| (label.clone(), d)))
        .collect::<Result<_>>()?;

    let mut period = 1;
    let mut witnesses = Vec::new();
    let mut inconclusive = Vec::new();
    for (label, d) in results {
        match (d.status, d.period) {
            (Status::Conjectured, Some(p)) => {
                period = period / gcd(period, p) * p;
                if p > 1 {
                    witnesses.push(Witness {
                        label,
                        apset: d.apset,
                        period: p,
                    });
                }
            }
            (Status::Inconclusive, _) => inconclusive.push(label),
            _ => {}
        }
    }
    Ok(PeriodBound {
        period,
        witnesses,
        candidates_checked: candidates.len(),
        inconclusive,
    })
}
