//! Exact tools for homomorphism indistinguishability: homomorphism counts,
//! hom-count identities, closures of essentially finite graph classes and the
//! complement transform for first-order logic.

pub mod acceptance;
pub mod canon;
pub mod closure;
pub mod enumerate;
pub mod error;
pub mod fo;
pub mod graph;
pub mod hom;
pub mod identities;
pub mod linalg;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use graph::Graph;
