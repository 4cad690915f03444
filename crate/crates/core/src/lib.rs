//! Ptolemy constants and uniformity constants of plane domains.
//!
//! The crate is organised bottom-up:
//!
//! - [`geom`]: extended complex numbers, Möbius maps, circles and angles.
//! - [`domains`]: the catalog of plane domains with boundary charts,
//!   boundary distance and membership.
//! - [`ptolemy`]: the Ptolemy ratio, the global estimator for `P(D)`,
//!   quadrilateral reductions and the closed-form table.
//! - [`qh`]: the distance ratio metric `j`, exact quasihyperbolic distances
//!   and the grid shortest-path solver for `k`.
//! - [`uniformity`]: estimates and certificates for the uniformity
//!   constant `A_G`.
//! - [`verify`]: the acceptance table shared by the CLI and the test suite.

pub mod domains;
pub mod error;
pub mod geom;
pub mod optim;
pub mod ptolemy;
pub mod qh;
pub mod quad;
pub mod uniformity;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
