//! The graded algebra on `t^a_b[n]`: gradation, PBW ordering, straightening
//! and generator-level Hopf data.

pub mod element;
pub mod grading;
pub mod hopf;
pub mod straighten;

pub use element::{AlgebraElement, Factor, Gen, RawElement, Word};
pub use grading::{eta_sign, pair_succ, Block, GradingContext, PairClass};
pub use straighten::{commutator_rhs, multiply, straighten, Rewriter};
