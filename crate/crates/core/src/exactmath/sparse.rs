//! Sparse matrices keyed by `(row, col)`, generic over the entry ring.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::linalg::DenseMatrix;
use super::ratfun::RatFun;
use super::rational::Rational;

/// Entry ring for [`SparseMatrix`].
pub trait Entry: Clone + PartialEq {
    fn is_zero_entry(&self) -> bool;
}

impl Entry for Rational {
    fn is_zero_entry(&self) -> bool {
        self.is_zero()
    }
}

impl Entry for RatFun {
    fn is_zero_entry(&self) -> bool {
        self.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), T>,
}

impl<T: Entry> SparseMatrix<T> {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Stores `v`, dropping the entry when it is zero.
    pub fn set(&mut self, r: usize, c: usize, v: T) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        if v.is_zero_entry() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&T> {
        self.entries.get(&(r, c))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &T)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn map<U: Entry>(&self, mut f: impl FnMut(&T) -> U) -> SparseMatrix<U> {
        let mut out = SparseMatrix::new(self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            out.set(r, c, f(v));
        }
        out
    }
}

impl SparseMatrix<Rational> {
    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            d[(r, c)] = v.clone();
        }
        d
    }

    pub fn from_dense(d: &DenseMatrix) -> Self {
        let mut s = SparseMatrix::new(d.rows(), d.cols());
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                if !d[(r, c)].is_zero() {
                    s.set(r, c, d[(r, c)].clone());
                }
            }
        }
        s
    }

    pub fn identity(n: usize) -> Self {
        let mut s = SparseMatrix::new(n, n);
        for i in 0..n {
            s.set(i, i, Rational::from_integer(1.into()));
        }
        s
    }
}
