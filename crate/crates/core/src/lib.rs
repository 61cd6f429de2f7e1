//! One-dimensional meshfree Lagrangian hydrodynamics.
//!
//! Particles carry mass, volume and specific internal energy. Spatial
//! derivatives come from a partition-of-unity [`shape`] table (SPH kernel
//! sums, moving least squares or cubic B-splines), the rates are assembled
//! in [`dynamics`] and advanced by the predictor–corrector in
//! [`integrator`]. [`riemann`] provides the exact shock-tube solution and
//! [`harness`] the Sod experiment built on top of it.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod error;
pub mod fluid;
pub mod harness;
pub mod integrator;
pub mod kernels;
pub mod quadrature;
pub mod riemann;
pub mod scheme;
pub mod shape;

pub use error::{Error, Result};
