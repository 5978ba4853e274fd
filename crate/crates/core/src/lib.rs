//! Exact computations around the Legendre genus to automorphic forms for
//! U(1,1; Z[i]): graded polynomial rings, truncated power series, formal
//! group laws of a genus-two hyperelliptic family, Hazewinkel generator
//! images with their integrality and Landweber checks, cusp expansions of
//! the generating automorphic forms, and the integer matrix embeddings of
//! the arithmetic group.

pub mod arithgroups;
pub mod chromatic;
pub mod curve;
mod error;
pub mod exact;
pub mod fgl;
pub mod legendre;
pub mod qexp;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
