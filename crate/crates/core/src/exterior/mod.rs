//! Exact scalar arithmetic over Q(i) and the exterior/linear algebra built on it.

mod ext;
mod matrix;
mod scalar;

pub(crate) use ext::sort_with_sign;
pub use ext::{contract, ExtElement, ExtVector};
pub use matrix::{in_span, ExactMatrix, Rref};
pub use scalar::Scalar;
