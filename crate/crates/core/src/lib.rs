//! Exact symbolic engine for dual quasitriangular Hopf algebras, braided
//! groups in their comodule categories, and the constructions between them.
//!
//! Scalars are Laurent polynomials in `q` over the rationals; elements of
//! tensor products of presented algebras are finite sums of tensor words.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod braided;
pub mod catalog;
pub mod constructions;
pub mod error;
pub mod linsolve;
pub mod ncpoly;
pub mod rewrite;
pub mod scalar;
pub mod structuremap;
pub mod syntax;
pub mod verify;

pub use error::{Error, Result};
pub use ncpoly::{AlgebraTag, Gen, NcElement, Signature, TensorWord, Word};
pub use rewrite::{ConfluenceReport, Poly, Presentation, PresentationBuilder, RewriteRule, Strategy};
pub use scalar::Scalar;
pub use syntax::Alphabet;
