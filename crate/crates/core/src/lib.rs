//! Enumerative invariants of non-special scrolls with general moduli.
//!
//! - [`numerics`]: closed-form dimensions, bounds and stability checks.
//! - [`chowring`]: the square-free ring modelling the Chow ring of `(P^1)^{2g}`.
//! - [`degeneration`]: unisecant curves on the reducible limits of a scroll.
//! - [`dualgraph`]: the limit dual graph, its genus, and the monodromy model.
//! - [`cli`]: the batch command-line surface.

pub mod chowring;
pub mod cli;
pub mod degeneration;
pub mod dualgraph;
pub mod error;
pub mod numerics;

pub use error::{Error, Result};
