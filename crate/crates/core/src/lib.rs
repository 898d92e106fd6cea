//! Real and complex Hermite families, the one-dimensional Fourier-Wigner
//! transform, and a laboratory of executable identity checks relating them.

pub(crate) mod dd;
mod error;
pub mod cli;
pub mod identity;
pub mod poly;
pub mod quadrature;
pub mod report;
pub mod special;
pub mod wigner;

pub use error::{Error, Result};
