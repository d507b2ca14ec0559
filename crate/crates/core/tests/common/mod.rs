//! Random instance generators shared by the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seqring::algebra::{ratio, Matrix};
use seqring::{ApSet, Equation, LinSystem, Poly, Rat, RatFunc, RatMatrix, RegularFunction};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

pub fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

/// Integer polynomial of degree at most `deg` with coefficients in
/// `[-bound, bound]`.
pub fn int_poly(rng: &mut ChaCha8Rng, deg: usize, bound: i64) -> Poly {
    let c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    Poly::from_i64s(&c)
}

/// `h0` a non-zero constant, `h1..h_{n-1}` integer polynomials of degree at
/// most `deg`, all coefficients in `[-5, 5]`.
pub fn bell_equation(rng: &mut ChaCha8Rng, order: usize, deg: usize) -> Equation {
    let mut coeffs = vec![RatFunc::from_i64(nonzero(rng, 5))];
    for _ in 1..order {
        coeffs.push(RatFunc::from(int_poly(rng, deg, 5)));
    }
    Equation::new(coeffs).unwrap()
}

/// Companion system of a random Bell-case equation of order `1..=max_order`.
pub fn bell_system(rng: &mut ChaCha8Rng, max_order: usize, deg: usize) -> LinSystem {
    let order = rng.gen_range(1..=max_order);
    bell_equation(rng, order, deg).companion_matrix()
}

/// A Bell companion system scaled by `(z + a) / (z + c)` with `a != c` in
/// `1..=5`: rational entries, defined and invertible at every `i >= 0`.
pub fn rational_system(rng: &mut ChaCha8Rng, max_order: usize) -> LinSystem {
    let order = rng.gen_range(2..=max_order);
    let base = bell_equation(rng, order, 1).companion_matrix();
    let a = rng.gen_range(1..=5);
    let mut c = rng.gen_range(1..=5);
    while c == a {
        c = rng.gen_range(1..=5);
    }
    let r: RatFunc = format!("(z + {a})/(z + {c})").parse().unwrap();
    LinSystem::new(base.matrix().map(|x| x * &r)).unwrap()
}

pub fn invertible_matrix(rng: &mut ChaCha8Rng, n: usize) -> RatMatrix {
    loop {
        let m = Matrix::from_vec(n, n, (0..n * n).map(|_| small_rat(rng)).collect());
        if m.det() != 0 {
            return m;
        }
    }
}

/// Random `p / det(Z)^m` with `p` of total degree at most `max_deg` in the
/// entries of `Z`, coefficients linear in `z`, and `m <= max_det`.
pub fn regular_function(rng: &mut ChaCha8Rng, n: usize, max_deg: u32, max_det: u32) -> RegularFunction {
    let vars: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let mut f = RegularFunction::zero(n);
    for _ in 0..rng.gen_range(1..=4) {
        let mut term = RegularFunction::from_ratfunc(n, RatFunc::from(int_poly(rng, 1, 3)));
        for _ in 0..rng.gen_range(0..=max_deg) {
            let &(i, j) = vars.choose(rng).unwrap();
            term = term.mul(&RegularFunction::entry(n, i, j)).unwrap();
        }
        f = f.add(&term).unwrap();
    }
    let m = rng.gen_range(0..=max_det);
    f.mul(&RegularFunction::inverse_det_power(n, m)).unwrap()
}

/// Canonical set with modulus at most `max_mod` and threshold at most
/// `max_thr` before canonicalization.
pub fn apset(rng: &mut ChaCha8Rng, max_mod: u64, max_thr: u64) -> ApSet {
    let l = rng.gen_range(1..=max_mod);
    let n0 = rng.gen_range(0..=max_thr);
    let residues: Vec<u64> = (0..l).filter(|_| rng.gen_bool(0.4)).collect();
    let sporadic: Vec<u64> = (0..n0).filter(|_| rng.gen_bool(0.3)).collect();
    ApSet::new(n0, l, residues, sporadic)
}
