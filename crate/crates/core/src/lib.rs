//! Exact computations for topological T-duality of circle bundles with H-flux.

pub mod abgroup;
pub mod cli;
pub mod error;
pub mod gysin;
mod json;
pub mod pair;
pub mod space;
pub mod torus;
pub mod twistk;

pub use error::{Error, Result};
