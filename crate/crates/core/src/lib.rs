//! Finite quantaloid-enriched categories: presheaf constructions, totality
//! and completeness checks, Isbell adjunctions and concrete categories
//! encoded over free quantaloids.

pub mod caps;
pub mod category;
pub mod concrete;
pub mod corpus;
pub mod dot;
pub mod enriched;
pub mod error;
pub mod fixtures;
pub mod instance;
pub mod isbell;
pub mod lattice;
pub mod presheaf;
pub mod quantaloid;
pub mod structure;

pub use error::{Error, Result};
