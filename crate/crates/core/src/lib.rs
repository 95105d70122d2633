//! Exact arithmetic for the elementary cellular automaton Rule 150 and the
//! singular function obtained by normalizing its cumulative cell counts.
//!
//! The crate is organized bottom-up:
//!
//! - [`eca`]: finite-support configurations and their evolution.
//! - [`counting`]: `num(n)` and `cum(n)` by simulation, by 2×2 matrix
//!   products over binary digits, and in closed form.
//! - [`quadratic`]: the field Q(√5), dyadic rationals and binary expansions.
//! - [`singular`]: the function `F` and its evaluators.
//! - [`analysis`]: difference quotients at dyadic and random points.
//! - [`fractal`]: prefractal bitmaps and box-counting slopes.
//!
//! Nothing in the numeric core uses floating point except the box-counting
//! slope, which is a statistical estimate by nature.

pub mod analysis;
pub mod counting;
pub mod eca;
mod error;
pub mod fractal;
pub mod quadratic;
pub mod singular;

pub use error::{Error, Result};
pub use quadratic::{alpha, BitStream, Dyadic, QSqrt5, Tail};
