//! Exact algebra behind matrix factorizations of quadrics, Veronese lifts of
//! even-degree forms and double-cover certificates.
//!
//! Everything here is pure computation over exact fields; IO, file formats
//! and the command line live in the `ulrich-forge` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod curve_cover;
pub mod error;
pub mod graded;
pub mod linalg;
pub mod matrix_factor;
pub mod poly;
pub mod quadform;
pub mod resultant;
pub mod scalar;
pub mod text;
pub mod univariate;
pub mod veronese;

pub use error::{Error, Result};
pub use poly::{Monomial, Poly};
pub use scalar::{Field, Scalar, Sqrt};
pub use text::parse_poly;
