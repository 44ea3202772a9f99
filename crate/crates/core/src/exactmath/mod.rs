//! Exact arithmetic: rationals, polynomials, rational functions, truncated
//! series and sparse/dense linear algebra over `Q`.

pub mod linalg;
pub mod poly;
pub mod ratfun;
pub mod rational;
pub mod sparse;

pub use linalg::{
    closure, largest_invariant_subspace, nullspace, quotient, DenseMatrix, Quotient, Subspace, Vector,
};
pub use poly::Polynomial;
pub use ratfun::{ratfun_normalize, series_expand, RatFun};
pub use rational::{q, qf, Rational};
pub use sparse::SparseMatrix;
