//! Exact computation with ternary quadratic forms and their even Clifford
//! algebras.

#![allow(clippy::needless_range_loop)]

pub mod algebra4;
pub mod cli;
pub mod clifford;
pub mod classify;
pub mod coeff;
pub mod error;
pub mod finite;
pub mod forms;
pub mod lifting;
pub mod linalg;

pub use coeff::{RingSpec, Scalar};
pub use error::{Error, Result};
