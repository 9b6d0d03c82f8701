//! Inverse one-phase fractional Stefan problems with similarity solutions.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classical;
pub mod cli;
pub mod error;
pub mod field;
pub mod inverse;
pub mod profiles;
pub mod scalar_root;
pub mod specfun;

pub use error::{Error, Result};
