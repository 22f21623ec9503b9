//! Analytic invariants of almost periodic exponential sums on tube domains
//! over convex cones.

#![allow(clippy::neg_cmp_op_on_partial_ord)]
pub mod classify;
pub mod cli;
pub mod cone;
pub mod config;
pub mod defaults;
pub mod error;
pub mod expsum;
pub mod indicator;
pub mod jessen;
pub mod linalg;
pub mod numeric;
pub mod zeros;

pub use error::{Error, Result};
