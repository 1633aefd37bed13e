//! Composition operators on finite atomic measure spaces, tested for
//! membership in operator classes defined relative to a positive operator `A`.
//!
//! Matrix predicates live in [`semihilbert`] and the pointwise criteria in
//! [`criteria`]; [`interval`] evaluates the same criteria for piecewise affine
//! maps of `[0,1]`.

pub mod criteria;
pub mod error;
pub mod interval;
pub mod linalg;
pub mod measure;
pub mod operator;
pub mod par;
pub mod property;
pub mod report;
pub mod runner;
pub mod semihilbert;

pub use error::{Error, Result};
pub use par::Execution;
pub use property::Property;
