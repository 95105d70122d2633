//! The singular function `F(x) = Σ x_i r(x)_i α^i` on `[0, 1]`, with
//! `α = (√5 - 1)/4` and `r(x)_i` the digit-matrix product over `x_1 .. x_{i-1}`.
//!
//! Routes to a value:
//!
//! - [`eval_dyadic_exact`]: the finite series at a dyadic rational;
//! - [`eval_recursive_dyadic`]: the functional equations alone;
//! - [`eval_periodic_exact`]: closed-form geometric tail for eventually
//!   periodic expansions;
//! - [`eval_stream_enclosure`]: a rigorous interval for any expansion;
//! - [`eval_fk`]: the normalized cell count `F_k`, which tends to `F`.

mod fk;
mod recursive;
mod runstate;
mod series;

pub use fk::{eval_fk, eval_fk_simulated, FK_SIMULATION_LIMIT};
pub use recursive::{eval_recursive_dyadic, RecursiveEvaluator};
pub use runstate::{b_coefficient, r_sequence, Growth, RunState};
pub use series::{
    check_dual_representation, eval_dyadic_exact, eval_periodic_exact, eval_stream_enclosure,
    eval_stream_exact, eval_word, grid_values, ones_partial_sum, Enclosure, PartialSum,
};
