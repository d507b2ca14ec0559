//! Fixed inputs shared by the benchmarks.

use seqring::algebra::rat;
use seqring::sequence::{indicator_sequence, solve_equation};
use seqring::{ApSet, Equation, ExactSeq, LinSystem, Rat};

pub fn fibonacci_system() -> LinSystem {
    Equation::fibonacci().companion_matrix()
}

/// An order-3 system with polynomial coefficients and constant determinant.
pub fn cubic_system() -> LinSystem {
    Equation::parse(&["2", "z^2 - 3", "-z"]).unwrap().companion_matrix()
}

pub fn fibonacci(horizon: u64) -> ExactSeq {
    solve_equation(&Equation::fibonacci(), &[rat(0), rat(1)], 0, horizon).unwrap()
}

/// Product of two solutions of `y(i+2) = (i+1) y(i+1) + 3 y(i)`: satisfies a
/// relation of order 3 with polynomial coefficients.
pub fn product_sequence(len: u64) -> Vec<Rat> {
    let eq = Equation::parse(&["-3", "-(z+1)"]).unwrap();
    let a = solve_equation(&eq, &[rat(1), rat(2)], 0, len - 1).unwrap();
    let b = solve_equation(&eq, &[rat(0), rat(1)], 0, len - 1).unwrap();
    a.mul(&b).unwrap().values().to_vec()
}

/// A sequence vanishing on `{3, 10} ∪ (4 + 7ℕ) ∪ (6 + 7ℕ)` from 20 on.
pub fn crafted_indicator(horizon: u64) -> ExactSeq {
    let tail = ApSet::new(20, 7, [4, 6], [3, 10]);
    indicator_sequence(&tail.complement(), 0, horizon)
}
