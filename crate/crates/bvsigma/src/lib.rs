//! Two-dimensional variation, BV/AC norms and composition-operator
//! isomorphisms for functions on compact subsets of the plane.
//!
//! The library works with finite point sets and with truncations of lazily
//! described countable compact sets whose only limit point is the origin
//! (C-sets). Geometric predicates are exact on rational coordinates; function
//! values carry their arithmetic mode (exact rational or double precision)
//! through every computation.
//!
//! All operations are pure functions of immutable values; the public types
//! are `Send + Sync` and results are deterministic for fixed inputs.

pub mod csets;
pub mod error;
pub mod geometry;
pub mod isomorphisms;
pub mod membership;
pub mod norms;
pub mod scalar;
pub mod variation;

pub use error::Error;
pub use scalar::{CScalar, RScalar, Q};

/// Library version string, echoed in CLI reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
