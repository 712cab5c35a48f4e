//! Workbench for binary quadratic operads over the rationals.
//!
//! The crate grows a presentation (generators with prescribed symmetry plus
//! arity-3 relations) into ideal and quotient dimensions arity by arity,
//! computes dual presentations through the arity-3 pairing, expands
//! generating series, and checks concrete algebra tables against operad
//! identities.  All arithmetic is exact.

pub mod algebras;
pub mod dsl;
pub mod error;
pub mod expansion;
pub mod koszul;
pub mod linalg;
pub mod presentations;
pub mod series;
pub mod trees;
pub mod verify;

pub use error::{Error, Result};
