//! Homological dimensions over finite-dimensional connective DG-algebras.
//!
//! Everything is computed with strict models over GF(p): DG-modules are honest
//! finite-dimensional complexes with a right action, and derived-category
//! morphisms only appear through free sources, DG-injective targets and cones.

pub mod builtins;
pub mod derived;
pub mod dgcore;
pub mod error;
pub mod exactla;
pub mod heartkit;
pub mod resolve;

pub use error::{Error, Result};
