//! Exact Newton and Lagrange interpolation over arbitrary fields, the
//! q-combinatorial primitives built on top of it, and verifiers that prove
//! the resulting q-series identities for fixed parameters.

pub mod algebra;
pub mod error;
pub mod identities;
pub mod interpolation;
pub mod qseries;

pub use error::{Error, Result};
