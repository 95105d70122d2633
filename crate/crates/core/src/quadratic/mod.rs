//! Exact numbers: the field Q(√5), dyadic rationals in `[0, 1]`, and binary
//! expansions of points of `[0, 1]`.

mod bitstream;
mod dyadic;
mod qsqrt5;

pub use bitstream::{BitStream, Bits, Tail};
pub use dyadic::{bits_of, dyadic_of, Dyadic};
pub(crate) use qsqrt5::sign_of;
pub use qsqrt5::{alpha, qs_add, qs_compare, qs_inv, qs_mul, qs_neg, qs_to_decimal, QSqrt5};
