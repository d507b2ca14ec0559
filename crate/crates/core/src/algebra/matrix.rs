//! Small dense matrices over a [`Field`].

use std::fmt;
use std::ops::{Index, IndexMut};

use super::rat::{Field, Rat};
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Matrix of exact rationals.
pub type RatMatrix = Matrix<Rat>;
/// Matrix over `K = k(z)`.
pub type MatK = Matrix<RatFunc>;

impl<T> Matrix<T> {
    /// Row-major construction; panics if the data does not fill the shape.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(rows * cols, data.len(), "matrix shape mismatch");
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: c,
                found: bad.len(),
            });
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>>
    where
        T: Clone,
    {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<S>(&self, f: impl FnMut(&T) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<S, E>(
        &self,
        f: impl FnMut(&T) -> std::result::Result<S, E>,
    ) -> std::result::Result<Matrix<S>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<std::result::Result<_, _>>()?,
        })
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a.mul(&rhs[(k, j)]);
                    out[(i, j)] = out[(i, j)].add(&prod);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[(r, c)].is_zero()) else {
                return T::zero();
            };
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                }
                det = det.neg();
            }
            let pivot = a[(c, c)].clone();
            det = det.mul(&pivot);
            let inv = pivot.inv().expect("nonzero pivot");
            for r in c + 1..n {
                if a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].mul(&inv);
                for j in c..n {
                    let t = f.mul(&a[(c, j)]);
                    a[(r, j)] = a[(r, j)].sub(&t);
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !a[(r, c)].is_zero())
                .ok_or(Error::SingularMatrix)?;
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                    inv.data.swap(p * n + j, c * n + j);
                }
            }
            let pinv = a[(c, c)].inv().expect("nonzero pivot");
            for j in 0..n {
                a[(c, j)] = a[(c, j)].mul(&pinv);
                inv[(c, j)] = inv[(c, j)].mul(&pinv);
            }
            for r in 0..n {
                if r == c || a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone();
                for j in 0..n {
                    let t = f.mul(&a[(c, j)]);
                    a[(r, j)] = a[(r, j)].sub(&t);
                    let t = f.mul(&inv[(c, j)]);
                    inv[(r, j)] = inv[(r, j)].sub(&t);
                }
            }
        }
        Ok(inv)
    }
}

impl MatK {
    /// Entrywise value at an integer point.
    pub fn eval(&self, i: i64) -> Result<RatMatrix> {
        self.try_map(|h| h.eval(i))
    }

    pub fn shift(&self, t: i64) -> Self {
        self.map(|h| h.shift(t))
    }

    pub fn is_polynomial(&self) -> bool {
        self.iter().all(RatFunc::is_polynomial)
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{self}")
    }
}
