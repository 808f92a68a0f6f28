//! Even lattices from maximal orders of the definite quaternion algebra
//! `(-1, -1 / F)` over real quadratic and simplest quartic fields.

#![allow(clippy::needless_range_loop)]

pub mod analyze;
pub mod error;
pub mod field;
pub mod lattice;
pub mod linalg;
pub mod numtheory;
pub mod quaternion;
pub mod record;
pub mod scan;

pub use error::{Error, Result};
