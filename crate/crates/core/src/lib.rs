//! Isomorphism testing for matroids given as independence oracles, as
//! matrices over prime fields, and as multigraphs.

pub mod acceptance;
pub mod corpus;
pub mod decompose;
pub mod error;
pub mod field;
pub mod gi;
pub mod gmi;
pub mod graph;
pub mod linear;
pub mod matroid;
pub mod reductions;
mod text;

pub use error::{Error, Result};
