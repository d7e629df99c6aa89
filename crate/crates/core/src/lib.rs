//! Pairwise balanced designs, their rank-3 matroids and erections, and the
//! monoids of Wilson morphisms between them.
//!
//! Points of every design are the dense indices `0..v` (at most 128 of
//! them), and point sets are [`PointSet`] bitmasks.

pub mod catalog;
pub mod complex;
pub mod error;
pub mod field;
pub mod green;
pub mod incidence;
pub mod mld;
pub mod morphism;
pub mod pointset;
pub mod wmonoid;

pub use error::{Error, Result};
pub use pointset::PointSet;
