#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod canon;
pub mod census;
pub mod construct;
pub mod error;
pub mod families;
pub mod generate;
pub mod graph;
pub mod graph6;
pub mod linalg;
pub mod spectra;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet, MAX_ORDER};
