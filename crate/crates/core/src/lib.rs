//! Exact arithmetic and certified numerics for spider graphs.
//!
//! The crate computes Perron-Frobenius data of spider graphs, decides whether
//! `Q(λ²)` is abelian, certifies the auxiliary trace function `B(x)`, and runs
//! the Morrison and 3-spider classification engines.

pub mod bounds;
pub mod classify;
pub mod config;
pub mod cyclo;
pub mod error;
pub mod par;
pub mod polyzq;
pub mod serde_util;
pub mod spider;

pub use error::{Error, Result};
