//! Exact homology and homotopy for finite categorical data.
//!
//! A category with finite hom-sets, a truncated cosimplicial object `F` in it,
//! and everything downstream: nerves, integer chain complexes, Smith normal
//! form homology, the homotopy relation, cone families, and the prism operator
//! built by acyclic models.

pub mod acyclic;
pub mod budget;
pub mod chain;
pub mod complexes;
pub mod convexity;
pub mod cosimplicial;
pub mod error;
pub mod fincat;
pub mod homotopy;
pub mod nerve;
pub mod report;
pub mod simplex;
pub mod simplicial;

pub use error::{Error, Result};
