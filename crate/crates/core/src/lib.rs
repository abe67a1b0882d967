//! Exact dual-matrix generalized inverses and decision procedures for the
//! minus, star and sharp partial orders on real and dual matrices.
//!
//! All arithmetic is over the rationals, so every verdict is exact.
//!
//! - [`kernel`]: rational matrices, rank, echelon forms, Moore-Penrose and
//!   group inverses.
//! - [`dual`]: dual matrices `E + eps E0` with `eps^2 = 0` and their four
//!   generalized inverses.
//! - [`orders`]: the ten order predicates, each evaluated through every
//!   known equivalent characterization.
//! - [`canonical`]: generators that build order-related pairs and chains
//!   from block canonical forms.
//! - [`verifier`]: seeded property campaigns over all of the above.

pub mod canonical;
pub mod dual;
pub mod error;
pub mod kernel;
pub mod orders;
pub mod verifier;

pub use error::{Error, Result};
pub use kernel::{Rational, RealMatrix};
pub use dual::DualMatrix;
pub use orders::{OrderKind, OrderReport};
