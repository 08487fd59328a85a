//! Incomplete simplex-product hypergeometric systems.
//!
//! This crate evaluates and cross-verifies the solutions of the incomplete
//! hypergeometric system attached to the product of a 1-simplex and an
//! (n-1)-simplex: the Lauricella-type particular series solution, its
//! integral representation, the homogeneous solution basis, the contiguity
//! (parameter shift) relations, and the exact operator identities behind
//! them.
//!
//! Numeric series work in double-precision complex arithmetic; the operator
//! identity checks (`weyl`, `power_product`) are exact over the rationals
//! with symbolic parameters.

pub mod contiguity;
pub mod error;
pub mod gkz;
pub mod lauricella;
pub mod parampoly;
pub mod power_product;
pub mod quadrature;
pub mod report;
pub mod sampling;
pub mod series;
pub mod system;
pub mod weyl;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Default series truncation order used when a caller does not pick one.
pub const DEFAULT_ORDER: usize = 20;

/// Default absolute tolerance for adaptive quadrature.
pub const DEFAULT_TOL: f64 = 1e-9;
