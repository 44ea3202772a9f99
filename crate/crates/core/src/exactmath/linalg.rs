//! Exact dense linear algebra over `Q`: reduced row echelon form, nullspaces,
//! subspaces in echelon form, and the invariant-subspace fixpoint.

use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use super::rational::Rational;
use super::sparse::SparseMatrix;
use crate::error::{Error, Result};

pub type Vector = Vec<Rational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vector]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, v) in r.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors (all of length `n`).
    pub fn from_columns(n: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rational]) -> Vector {
        assert_eq!(self.cols, v.len(), "dimension mismatch in apply");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &DenseMatrix) -> DenseMatrix {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Stacks `o` below `self`.
    pub fn vstack(&self, o: &DenseMatrix) -> DenseMatrix {
        if self.rows == 0 {
            return o.clone();
        }
        assert_eq!(self.cols, o.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        DenseMatrix {
            rows: self.rows + o.rows,
            cols: self.cols,
            data,
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &f * &self[(r, j)];
                    self[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right nullspace, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vector> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -m[(row, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `self * x = b` for one solution, if any.
    pub fn solve(&self, b: &[Rational]) -> Option<Vector> {
        assert_eq!(self.rows, b.len());
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = aug[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Characteristic polynomial `det(x I - A)` by Faddeev–LeVerrier.
    pub fn charpoly(&self) -> super::poly::Polynomial {
        assert_eq!(self.rows, self.cols, "charpoly of a non-square matrix");
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            let mut next = self.mul(&m);
            for i in 0..n {
                next[(i, i)] += &coeffs[n - k + 1];
            }
            m = next;
            let am = self.mul(&m);
            let tr: Rational = (0..n).map(|i| am[(i, i)].clone()).sum();
            coeffs[n - k] = -tr / Rational::from_integer((k as i64).into());
        }
        super::poly::Polynomial::new(coeffs)
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

/// Exact basis of the right nullspace of a sparse matrix.
pub fn nullspace(m: &SparseMatrix<Rational>) -> Vec<Vector> {
    m.to_dense().nullspace()
}

/// A subspace of `Q^n`, stored as a basis in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, &DenseMatrix::identity(ambient).data_rows())
    }

    pub fn span(ambient: usize, vectors: &[Vector]) -> Self {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(v.clone());
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Reduces `v` against the echelon basis; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[Rational]) -> Vector {
        let mut v = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vector) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut v = self.reduce(&v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for b in self.basis.iter_mut() {
            if b[p].is_zero() {
                continue;
            }
            let f = b[p].clone();
            for (x, y) in b.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, v);
        true
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn is_subspace_of(&self, o: &Subspace) -> bool {
        self.basis.iter().all(|b| o.contains(b))
    }

    /// Matrix `Z` with `Z v = 0` exactly for `v` in the subspace.
    pub fn annihilator(&self) -> DenseMatrix {
        if self.basis.is_empty() {
            return DenseMatrix::identity(self.ambient);
        }
        let rows = DenseMatrix::from_rows(&self.basis).nullspace();
        if rows.is_empty() {
            return DenseMatrix::zeros(0, self.ambient);
        }
        DenseMatrix::from_rows(&rows)
    }

    pub fn intersect(&self, o: &Subspace) -> Subspace {
        let z = o.annihilator();
        if z.rows() == 0 {
            return self.clone();
        }
        let b = DenseMatrix::from_columns(self.ambient, &self.basis);
        let coeffs = z.mul(&b).nullspace();
        let vecs: Vec<Vector> = coeffs.iter().map(|c| b.apply(c)).collect();
        Subspace::span(self.ambient, &vecs)
    }
}

impl DenseMatrix {
    fn data_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

/// Largest subspace `S` of `ambient` with `op(S) ⊆ S` for every op.
///
/// Iterates `S_{i+1} = {w ∈ S_i : op·w ∈ S_i for all ops}` until the
/// dimension stops dropping.
pub fn largest_invariant_subspace(ambient: &Subspace, ops: &[DenseMatrix]) -> Result<Subspace> {
    let n = ambient.ambient();
    for op in ops {
        if op.rows() != n || op.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "operator is {}x{}, ambient space has dimension {n}",
                op.rows(),
                op.cols()
            )));
        }
    }
    let mut s = ambient.clone();
    loop {
        if s.dim() == 0 {
            return Ok(s);
        }
        let z = s.annihilator();
        if z.rows() == 0 {
            return Ok(s);
        }
        let b = DenseMatrix::from_columns(n, s.basis());
        let mut system = DenseMatrix::zeros(0, s.dim());
        for op in ops {
            system = system.vstack(&z.mul(&op.mul(&b)));
        }
        let coeffs = system.nullspace();
        if coeffs.len() == s.dim() {
            return Ok(s);
        }
        let vecs: Vec<Vector> = coeffs.iter().map(|c| b.apply(c)).collect();
        s = Subspace::span(n, &vecs);
    }
}

/// Smallest subspace containing `seeds` and closed under every op.
pub fn closure(n: usize, seeds: &[Vector], ops: &[DenseMatrix]) -> Subspace {
    let mut s = Subspace::zero(n);
    let mut queue: Vec<Vector> = Vec::new();
    for v in seeds {
        if s.insert(v.clone()) {
            queue.push(v.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for op in ops {
            let w = op.apply(&v);
            if s.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    s
}

impl DenseMatrix {
    pub fn inverse(&self) -> Option<DenseMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }
}

/// Coset representatives for `outer / inner`, assembled piece by piece, plus
/// a constant projection `proj` with `proj · w` = representative coordinates
/// of `w mod inner` for every `w` in `outer`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub reps: Vec<Vector>,
    /// Index of the piece each representative came from.
    pub piece: Vec<usize>,
    pub proj: DenseMatrix,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// The quotient action `proj · op · reps` of an operator preserving both spaces.
    pub fn induced(&self, op: &DenseMatrix) -> DenseMatrix {
        let r = DenseMatrix::from_columns(self.proj.cols(), &self.reps);
        self.proj.mul(&op.mul(&r))
    }
}

/// `pieces` lists `(outer_i, inner_i)` with `inner_i ⊆ outer_i`; the sums
/// over `i` must be direct.
pub fn quotient(n: usize, pieces: &[(Subspace, Subspace)]) -> Quotient {
    let mut reps = Vec::new();
    let mut piece = Vec::new();
    let mut inner_all = Vec::new();
    for (i, (outer, inner)) in pieces.iter().enumerate() {
        let mut acc = inner.clone();
        for b in outer.basis() {
            if acc.insert(b.clone()) {
                reps.push(b.clone());
                piece.push(i);
            }
        }
        inner_all.extend(inner.basis().iter().cloned());
    }
    let mut cols: Vec<Vector> = reps.iter().chain(&inner_all).cloned().collect();
    let mut span = Subspace::span(n, &cols);
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        if span.insert(e.clone()) {
            cols.push(e);
        }
    }
    let full = DenseMatrix::from_columns(n, &cols)
        .inverse()
        .expect("completed basis is invertible");
    let q = reps.len();
    let mut proj = DenseMatrix::zeros(q, n);
    for i in 0..q {
        for j in 0..n {
            proj[(i, j)] = full[(i, j)].clone();
        }
    }
    Quotient { reps, piece, proj }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::q;

    fn m(rows: &[&[i64]]) -> DenseMatrix {
        DenseMatrix::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| q(x)).collect())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn nullspace_examples() {
        assert!(DenseMatrix::identity(2).nullspace().is_empty());
        assert_eq!(m(&[&[1, -1]]).nullspace(), vec![vec![q(1), q(1)]]);
        assert_eq!(DenseMatrix::zeros(3, 3).nullspace().len(), 3);
    }

    #[test]
    fn rank_nullity() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 0, 1]]);
        let ns = a.nullspace();
        assert_eq!(a.rank() + ns.len(), 4);
        for v in ns {
            assert!(a.apply(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn invariant_subspace_examples() {
        let full = Subspace::full(2);
        let jordan = m(&[&[0, 1], &[0, 0]]);
        assert_eq!(
            largest_invariant_subspace(&full, std::slice::from_ref(&jordan)).unwrap(),
            full
        );
        let e1 = Subspace::span(2, &[vec![q(1), q(0)]]);
        assert_eq!(
            largest_invariant_subspace(&e1, &[DenseMatrix::zeros(2, 2)]).unwrap(),
            e1
        );
        // op·e1 = 0, so span(e1) is invariant.
        assert_eq!(largest_invariant_subspace(&e1, std::slice::from_ref(&jordan)).unwrap(), e1);
        // span(e2) is not: op·e2 = e1.
        let e2 = Subspace::span(2, &[vec![q(0), q(1)]]);
        assert_eq!(largest_invariant_subspace(&e2, &[jordan]).unwrap().dim(), 0);
        assert!(largest_invariant_subspace(&e2, &[DenseMatrix::zeros(3, 3)]).is_err());
    }

    #[test]
    fn charpoly_of_companion() {
        // x^2 - 3x + 2
        let a = m(&[&[0, -2], &[1, 3]]);
        assert_eq!(a.charpoly().coeffs(), &[q(2), q(-3), q(1)]);
    }

    #[test]
    fn subspace_ops() {
        let a = Subspace::span(3, &[vec![q(1), q(1), q(0)], vec![q(0), q(1), q(1)]]);
        let b = Subspace::span(3, &[vec![q(1), q(0), q(0)], vec![q(0), q(0), q(1)]]);
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[q(1), q(0), q(-1)]));
        let c = a.coordinates(&[q(2), q(3), q(1)]).unwrap();
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn inverse_and_quotient() {
        let a = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(a.mul(&a.inverse().unwrap()), DenseMatrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
        // Q^3 / span(e3) with op = shift e1 -> e2 -> e3 -> 0
        let op = m(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        let outer = Subspace::full(3);
        let inner = Subspace::span(3, &[vec![q(0), q(0), q(1)]]);
        let qt = quotient(3, &[(outer, inner)]);
        assert_eq!(qt.dim(), 2);
        assert_eq!(qt.induced(&op), m(&[&[0, 0], &[1, 0]]));
    }
}
