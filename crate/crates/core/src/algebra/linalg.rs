//! Fraction-free elimination over the integers.

use std::borrow::Borrow;

use malachite_base::num::arithmetic::traits::{Gcd, Lcm};
use malachite_base::num::basic::traits::{One, Zero};
use malachite_nz::integer::Integer;
use malachite_nz::natural::Natural;

use super::rat::Rat;

fn primitive(row: &mut [Integer]) {
    let g = row
        .iter()
        .fold(Natural::ZERO, |g, x| g.gcd(x.unsigned_abs_ref()));
    if g > Natural::ONE {
        let g = Integer::from(g);
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

fn to_integer_row(row: &[Rat]) -> Vec<Integer> {
    let l = row
        .iter()
        .fold(Natural::ONE, |acc, x| acc.lcm(x.denominator_ref()));
    let l = Rat::from(l);
    let mut out: Vec<Integer> = row
        .iter()
        .map(|x| Integer::try_from(x * &l).expect("denominators cleared"))
        .collect();
    primitive(&mut out);
    out
}

/// Basis of the right kernel `{v : M v = 0}` of a rational matrix given by
/// rows with `cols` columns.
///
/// Rows are scaled to primitive integer vectors and reduced by
/// fraction-free Gauss-Jordan elimination (cross-multiplication followed by
/// content removal), so no intermediate fractions appear. Each basis vector
/// has a 1 in exactly one free column and 0 in the other free columns, and
/// the basis is ordered by free column.
pub fn nullspace(rows: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Integer>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "row length mismatch");
            to_integer_row(r)
        })
        .filter(|r| r.iter().any(|x| *x != 0))
        .collect();

    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let pivot_row = m[rank].clone();
        let a = pivot_row[c].clone();
        let eliminate = |row: &mut Vec<Integer>| {
            if row[c] == 0 {
                return;
            }
            let b = row[c].clone();
            for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                *x = &a * &*x - &b * y;
            }
            primitive(row);
        };
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank {
                eliminate(row);
            }
        }
        pivots.push(c);
        rank += 1;
        m.retain(|r| r.iter().any(|x| *x != 0));
    }

    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::ZERO; cols];
            v[f] = Rat::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                let row = &m[r];
                v[pc] = -Rat::from_integers(row[f].clone(), row[pc].clone());
            }
            v
        })
        .collect()
}

/// `(d, [d x_1, ..., d x_k])` with `d` the least common denominator.
pub fn clear_denominators<R: Borrow<Rat>>(xs: &[R]) -> (Natural, Vec<Integer>) {
    let d = xs
        .iter()
        .fold(Natural::ONE, |acc, x| acc.lcm(x.borrow().denominator_ref()));
    let dr = Rat::from(&d);
    let ints = xs
        .iter()
        .map(|x| Integer::try_from(x.borrow() * &dr).expect("denominators cleared"))
        .collect();
    (d, ints)
}

/// Determinant of a square integer matrix (row-major) by Bareiss
/// elimination, in which every division is exact.
pub fn integer_det(n: usize, entries: &[Integer]) -> Integer {
    assert_eq!(entries.len(), n * n, "matrix is not square");
    let mut m: Vec<Vec<Integer>> = entries.chunks(n).map(<[Integer]>::to_vec).collect();
    let mut sign = false;
    let mut prev = Integer::ONE;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| m[r][k] != 0) else {
            return Integer::ZERO;
        };
        if p != k {
            m.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return Integer::ONE;
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Exact rank of a rational matrix.
pub fn rank(rows: &[Vec<Rat>], cols: usize) -> usize {
    cols - nullspace(rows, cols).len()
}
