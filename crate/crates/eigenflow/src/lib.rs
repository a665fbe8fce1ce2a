//! Eigenvalue trajectories and collisions of an interpolated random matrix
//! family.
//!
//! The family is `R(s, t) = cos(sπ/2) C + sin(sπ/2) U(t)` where `C` is a
//! random base matrix and `U(t)` carries `n` equally spaced points around a
//! closed curve. This crate samples the family, tracks its eigenvalues
//! continuously over the `(s, t)` square, and detects, classifies, and
//! localizes the eigenvalue collisions that force the tracking to braid.
//!
//! Start with [`model::ModelSpec`] to describe an instance, then
//! [`collisions::grid_search`] for the full collision census or
//! [`tracking`] for the underlying continuation machinery. The `examples/`
//! directory walks through each capability.

pub mod cli;
pub mod collisions;
pub mod curves;
pub mod error;
pub mod io;
pub mod matrix;
pub mod model;
pub mod permutation;
pub mod plot;
pub mod stats;
pub mod tracking;

pub use error::{Error, Result};
