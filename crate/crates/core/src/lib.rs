//! Exact computations around point sets imposing independent linear
//! conditions on forms, with applications to factoriality of nodal
//! hypersurfaces in `P^4` and base points of plane linear systems.
//!
//! Everything is exact: rationals via fraction-free elimination, prime
//! fields via plain elimination. No floating point anywhere.

pub mod bese;
pub mod campaign;
pub mod cli;
pub mod conditions;
pub mod curves;
pub mod documents;
pub mod error;
pub mod hypersurface;
pub mod projection;
pub mod projective;

pub use error::{Error, Result};
