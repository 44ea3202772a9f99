//! Exact kernel for the super Yangian `Y(gl(M|N))`.

pub mod codec;
pub mod error;
pub mod exactmath;
pub mod glmn;
pub mod par;
pub mod suites;
pub mod superalgebra;
pub mod weights;
pub mod yangian;

pub use error::{Error, Result};

/// Version string recorded with every cached result.
pub const KERNEL_VERSION: &str = env!("CARGO_PKG_VERSION");
