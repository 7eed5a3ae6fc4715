//! Exact arithmetic for Thompson's monoid `M = <x0, x1, ... | x_j x_i = x_i x_{j+1}, i < j>`
//! and its monoid ring `K[M]`.

pub mod census;
pub mod constructions;
pub mod error;
pub mod field;
pub mod linalg;
pub mod monomial;
pub mod ore;
pub mod parse;
pub mod poly;
pub mod sets;

pub use error::{Error, Result};
pub use field::{Certificate, Field, Scalar};
pub use linalg::SparseMatrix;
pub use monomial::Monomial;
pub use poly::Polynomial;
pub use sets::SetDescriptor;
