//! Exact-arithmetic computation of the dimensions, defects and contact loci
//! of higher secant varieties of classical projective varieties.
//!
//! Varieties are handled through polynomial parametrizations of affine
//! charts. The dimension of a k-secant variety is read off the rank of
//! stacked tangent frames at k+1 general points; tangential projections,
//! Gauss defects and contact-locus dimensions come from exact linear algebra
//! on the same frames. All arithmetic is exact: arbitrary-precision
//! rationals or a prime field with modulus near 2^61.

pub mod algebra;
pub mod bounds;
pub mod catalog;
pub mod chart;
pub mod cli;
pub mod error;
pub mod matrix;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod terracini;

pub use error::Error;
