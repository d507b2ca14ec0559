//! The map `sigma(b, B) = (b + 1, A(b) B)` on `A^1 x GL_n`, evaluation of
//! regular functions along its orbits, and subvariety hitting sets.

mod regular;

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::algebra::{RatMatrix, Rat};
use crate::error::{Error, Result};
use crate::recurrence::LinSystem;
use crate::sequence::ExactSeq;
use crate::zeros::zero_set;

pub use regular::RegularFunction;

/// A point `(b, B)` with `det B != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitState {
    b: i64,
    mat: RatMatrix,
}

impl OrbitState {
    pub fn new(b: i64, mat: RatMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::DimensionMismatch {
                expected: mat.rows(),
                found: mat.cols(),
            });
        }
        if mat.det() == 0 {
            return Err(Error::SingularMatrix);
        }
        Ok(Self { b, mat })
    }

    /// `(b, I_n)`.
    pub fn identity(b: i64, n: usize) -> Self {
        Self {
            b,
            mat: RatMatrix::identity(n),
        }
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    /// `(0, B)`: the same point seen from the system rebased at `b`.
    pub fn rebased(&self) -> Self {
        Self {
            b: 0,
            mat: self.mat.clone(),
        }
    }
}

fn check_dim(sys: &LinSystem, n: usize) -> Result<()> {
    if sys.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: sys.dim(),
            found: n,
        });
    }
    Ok(())
}

/// `sigma(x) = (b + 1, A(b) B)`, defined when every entry of `A` is defined
/// at `b` and `det A(b) != 0`.
pub fn orbit_step(sys: &LinSystem, x: &OrbitState) -> Result<OrbitState> {
    check_dim(sys, x.dim())?;
    let a = sys
        .step_matrix(x.b)
        .ok_or(Error::Undefined { abscissa: x.b })?;
    Ok(OrbitState {
        b: x.b + 1,
        mat: a.mul(&x.mat),
    })
}

/// Largest `m <= horizon` such that `sigma` can be applied at each of
/// `x, sigma(x), ..., sigma^m(x)`; `None` when it cannot be applied at `x`.
///
/// Only the abscissa matters, so this scans `A` at `b, b + 1, ...` without
/// forming matrix products.
pub fn orbit_defined_prefix(sys: &LinSystem, x: &OrbitState, horizon: u64) -> Option<u64> {
    let defined = |k: u64| sys.step_matrix(x.b + k as i64).is_some();
    if !defined(0) {
        return None;
    }
    Some((1..=horizon).find(|&k| !defined(k)).map_or(horizon, |k| k - 1))
}

/// The states `sigma^(i - b)(x)` for positions `b <= i <= horizon`.
#[derive(Clone, Debug)]
pub struct OrbitTrace {
    start: u64,
    states: Vec<RatMatrix>,
}

impl OrbitTrace {
    pub fn compute(sys: &LinSystem, x: &OrbitState, horizon: u64) -> Result<Self> {
        check_dim(sys, x.dim())?;
        let start = u64::try_from(x.b).map_err(|_| Error::NegativeAbscissa(x.b))?;
        if horizon < start {
            return Err(Error::HorizonTooSmall {
                horizon,
                min: start,
            });
        }
        let mut states = Vec::with_capacity((horizon - start + 1) as usize);
        states.push(x.mat.clone());
        for i in start..horizon {
            let a = sys.step_matrix(i as i64).ok_or(Error::UndefinedOrbit {
                step: i - start,
                abscissa: i as i64,
            })?;
            let next = a.mul(states.last().expect("non-empty"));
            states.push(next);
        }
        Ok(Self { start, states })
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn horizon(&self) -> u64 {
        self.start + self.states.len() as u64 - 1
    }

    /// The matrix part of the state at position `i`.
    pub fn at(&self, i: u64) -> Option<&RatMatrix> {
        let k = i.checked_sub(self.start)?;
        self.states.get(k as usize)
    }

    pub fn states(&self) -> &[RatMatrix] {
        &self.states
    }

    /// `psi(f)` on the window: `f(sigma^(i - b)(x))` at position `i`.
    pub fn evaluate(&self, f: &RegularFunction) -> Result<ExactSeq> {
        let values = self
            .states
            .iter()
            .enumerate()
            .map(|(k, m)| f.evaluate((self.start + k as u64) as i64, m))
            .collect::<Result<Vec<Rat>>>()?;
        Ok(ExactSeq::new(self.start, values, format!("psi({f})")))
    }
}

/// `psi(f)` restricted to `[b, horizon]`.
pub fn evaluate_along_orbit(
    f: &RegularFunction,
    sys: &LinSystem,
    x: &OrbitState,
    horizon: u64,
) -> Result<ExactSeq> {
    check_dim(sys, f.dim())?;
    OrbitTrace::compute(sys, x, horizon)?.evaluate(f)
}

/// A closed subvariety given by the common zeros of its generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subvariety {
    generators: Vec<RegularFunction>,
}

impl Subvariety {
    pub fn new(generators: Vec<RegularFunction>) -> Result<Self> {
        let first = generators.first().ok_or(Error::EmptySubvariety)?;
        if let Some(g) = generators.iter().find(|g| g.dim() != first.dim()) {
            return Err(Error::DimensionMismatch {
                expected: first.dim(),
                found: g.dim(),
            });
        }
        Ok(Self { generators })
    }

    /// Parses each generator in the regular-function grammar.
    pub fn parse<S: AsRef<str>>(generators: &[S], n: usize) -> Result<Self> {
        Self::new(
            generators
                .iter()
                .map(|g| RegularFunction::parse(g.as_ref(), n))
                .collect::<Result<_>>()?,
        )
    }

    pub fn generators(&self) -> &[RegularFunction] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.generators[0].dim()
    }

    /// Generators `g(z + t, Z)`.
    pub fn shift_z(&self, t: i64) -> Self {
        Self {
            generators: self.generators.iter().map(|g| g.shift_z(t)).collect(),
        }
    }
}

/// Positions `i` in `[b, horizon]` with `sigma^(i - b)(x)` in `Y`.
pub fn orbit_membership_set(
    sys: &LinSystem,
    x: &OrbitState,
    y: &Subvariety,
    horizon: u64,
) -> Result<BTreeSet<u64>> {
    check_dim(sys, y.dim())?;
    let trace = OrbitTrace::compute(sys, x, horizon)?;
    membership_on_trace(&trace, y)
}

/// Like [`orbit_membership_set`] over a precomputed trace.
pub fn membership_on_trace(trace: &OrbitTrace, y: &Subvariety) -> Result<BTreeSet<u64>> {
    let sets = y
        .generators
        .par_iter()
        .map(|g| trace.evaluate(g).map(|s| zero_set(&s)))
        .collect::<Result<Vec<_>>>()?;
    let mut it = sets.into_iter();
    let first = it.next().expect("subvariety has generators");
    Ok(it.fold(first, |acc, s| acc.intersection(&s).copied().collect()))
}

/// `A(z + b)`; with `x~ = (0, B)` its orbit visits `Y~ = {g(z + b, Z)}`
/// exactly when the orbit of `(b, B)` visits `Y`.
pub fn rebase(sys: &LinSystem, b: i64) -> LinSystem {
    sys.rebase(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;
    use crate::algebra::Matrix;
    use crate::recurrence::Equation;

    fn fib() -> LinSystem {
        Equation::fibonacci().companion_matrix()
    }

    fn scalar(s: &str) -> LinSystem {
        LinSystem::parse(&[vec![s]]).unwrap()
    }

    fn one_by_one(b: i64) -> OrbitState {
        OrbitState::identity(b, 1)
    }

    #[test]
    fn step_examples() {
        let x = orbit_step(&fib(), &OrbitState::identity(0, 2)).unwrap();
        assert_eq!(x.b(), 1);
        assert_eq!(
            x.matrix(),
            &Matrix::from_rows(vec![vec![rat(0), rat(1)], vec![rat(1), rat(1)]]).unwrap()
        );
        let a = scalar("(z-4)/(z-5)");
        assert_eq!(
            orbit_step(&a, &one_by_one(5)),
            Err(Error::Undefined { abscissa: 5 })
        );
        assert_eq!(
            orbit_step(&a, &one_by_one(4)),
            Err(Error::Undefined { abscissa: 4 })
        );
        assert!(OrbitState::new(0, Matrix::from_rows(vec![vec![rat(0)]]).unwrap()).is_err());
    }

    #[test]
    fn defined_prefix_examples() {
        assert_eq!(orbit_defined_prefix(&fib(), &OrbitState::identity(7, 2), 100), Some(100));
        let a = scalar("(z-4)/(z-5)");
        assert_eq!(orbit_defined_prefix(&a, &one_by_one(0), 100), Some(3));
        assert_eq!(orbit_defined_prefix(&a, &one_by_one(6), 100), Some(100));
        assert_eq!(orbit_defined_prefix(&a, &one_by_one(4), 100), None);
        // brute-force walk
        let mut x = one_by_one(0);
        let mut steps = 0;
        while let Ok(next) = orbit_step(&a, &x) {
            x = next;
            steps += 1;
        }
        assert_eq!(steps - 1, 3);
    }

    #[test]
    fn psi_examples() {
        let f = RegularFunction::parse("Z[1][1]", 2).unwrap();
        let s = evaluate_along_orbit(&f, &fib(), &OrbitState::identity(0, 2), 10).unwrap();
        let want: Vec<Rat> = [1, 0, 1, 1, 2, 3, 5, 8, 13, 21, 34].iter().map(|&v| rat(v)).collect();
        assert_eq!(s.values(), want.as_slice());
        let one = evaluate_along_orbit(&RegularFunction::one(2), &fib(), &OrbitState::identity(0, 2), 10).unwrap();
        assert!(one.values().iter().all(|v| *v == 1));
        let det = evaluate_along_orbit(&RegularFunction::det(2), &fib(), &OrbitState::identity(0, 2), 10).unwrap();
        for (i, v) in det.values().iter().enumerate() {
            assert_eq!(*v, rat(if i % 2 == 0 { 1 } else { -1 }));
        }
        let a = scalar("(z-4)/(z-5)");
        let g = RegularFunction::parse("Z[1][1]", 1).unwrap();
        assert_eq!(
            evaluate_along_orbit(&g, &a, &one_by_one(0), 10),
            Err(Error::UndefinedOrbit { step: 4, abscissa: 4 })
        );
        assert_eq!(
            evaluate_along_orbit(&g, &a, &one_by_one(-1), 10),
            Err(Error::NegativeAbscissa(-1))
        );
    }

    #[test]
    fn membership_examples() {
        let x = OrbitState::identity(0, 2);
        let v = |g: &str| Subvariety::parse(&[g], 2).unwrap();
        assert_eq!(orbit_membership_set(&fib(), &x, &v("Z[1][1]"), 200).unwrap(), BTreeSet::from([1]));
        let odd: BTreeSet<u64> = (1..=200).step_by(2).collect();
        assert_eq!(orbit_membership_set(&fib(), &x, &v("detZ + 1"), 200).unwrap(), odd);
        assert!(orbit_membership_set(&fib(), &x, &v("1"), 200).unwrap().is_empty());
        let both = Subvariety::parse(&["detZ + 1", "Z[1][1]"], 2).unwrap();
        assert_eq!(orbit_membership_set(&fib(), &x, &both, 200).unwrap(), BTreeSet::from([1]));
        assert_eq!(Subvariety::new(vec![]), Err(Error::EmptySubvariety));
    }

    #[test]
    fn rebase_examples() {
        let a = scalar("z/(z-3)");
        assert_eq!(rebase(&a, 5), scalar("(z+5)/(z+2)"));
        assert_eq!(rebase(&a, 0), a);
        assert_eq!(rebase(&rebase(&a, 7), -7), a);

        // the orbit of (b, B) under A meets Y where that of (0, B) under A(z+b)
        // meets Y shifted by b
        let sys = LinSystem::parse(&[vec!["z", "1"], vec!["1", "0"]]).unwrap();
        let y = Subvariety::parse(&["Z[1][1] - z*Z[2][1] + 3"], 2).unwrap();
        let b = 4;
        let x = OrbitState::identity(b, 2);
        let orig = orbit_membership_set(&sys, &x, &y, 60).unwrap();
        let reb = orbit_membership_set(&rebase(&sys, b), &x.rebased(), &y.shift_z(b), 60 - b as u64).unwrap();
        let moved: BTreeSet<u64> = reb.iter().map(|i| i + b as u64).collect();
        assert_eq!(orig, moved);
    }
}
