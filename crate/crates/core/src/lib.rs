//! Exact Poisson cohomology of holomorphic toric Poisson structures on CPⁿ and
//! Cⁿ.
//!
//! The closed-form path ([`engine`]) sums torus weight spaces selected by the
//! cocycle condition; the [`oracle`] path builds the Schouten complex of
//! polynomial multivector fields and takes exact ranks. The two never share
//! code beyond the scalar/linear algebra layer and the report types.

pub mod cli;
pub mod engine;
pub mod error;
pub mod exterior;
pub mod oracle;
pub mod report;
pub mod solver;
pub mod toric;

pub use error::{Error, Result};
