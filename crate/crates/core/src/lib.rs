//! Exact Hurwitz numbers, psi-class correlators and linear Hodge integrals.

pub mod error;
pub mod cli;
pub mod exact_core;
pub mod hurwitz;
pub mod intersection;
pub mod partitions;
pub mod report;
pub mod symmetrize;

pub use error::{Error, Result};
