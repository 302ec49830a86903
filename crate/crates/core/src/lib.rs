//! Exact verification of Clifford-module constructions used to localize
//! spin^c Dirac operators onto a characteristic submanifold.
//!
//! Everything is computed over ℚ: Clifford algebras by basis blades, their
//! spinor modules as rational matrices (complex spaces carry an explicit
//! complex structure), fiberwise symbols, and truncated characteristic
//! series for the index comparison.

pub mod cl3;
pub mod clifford;
pub mod complex;
pub mod error;
pub mod exterior;
pub mod genus;
pub mod linalg;
pub mod model;
pub mod localization;
pub mod rational;
pub mod rep;
pub mod report;
pub mod suite;

pub use error::{Error, Result};
