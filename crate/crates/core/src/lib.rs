//! Exact volumes of flow polytopes: subdivision trees, integer arrays,
//! Kostant partition functions and iterated constant terms, with the
//! closed-form product families they are checked against.

pub mod arrays;
pub mod bijections;
pub mod catalanotope;
pub mod ctlaurent;
pub mod error;
pub mod families;
pub mod formulas;
pub mod kostant;
pub mod multigraph;
pub mod reduction;

pub use error::{Error, Result};
pub use multigraph::{ExtendedGraph, Multigraph};
