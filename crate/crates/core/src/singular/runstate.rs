use num_bigint::BigUint;
use num_traits::One;

use crate::counting::Row2;
use crate::quadratic::BitStream;

/// Streaming state for the coefficients `r(x)_i`.
///
/// Holds the row `a M_{x_1} ... M_{x_{i-1}}` (the leading digit `x_0` is taken
/// as 0, and `a M_0 = a`), so that `r(x)_i = row · u_0`. The length of the
/// trailing run of 1s is tracked alongside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunState {
    row: Row2,
    position: u64,
    run: u64,
}

/// How `r` changed across one digit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Growth {
    /// A 0 digit: `r` unchanged.
    Flat,
    /// A 1 digit opening a run: `r` tripled.
    Open,
    /// A 1 digit extending a run to length `l >= 2`: `r` scaled by `b_{l+1} / b_l`.
    Extend(u64),
}

impl Default for RunState {
    fn default() -> Self {
        Self::new()
    }
}

impl RunState {
    /// State at position 1, where `r(x)_1 = 1`.
    pub fn new() -> Self {
        Self {
            row: Row2::unit(),
            position: 1,
            run: 0,
        }
    }

    /// The index `i` whose coefficient [`Self::r`] returns.
    pub fn position(&self) -> u64 {
        self.position
    }

    /// Length of the run of 1s ending at digit `i - 1`.
    pub fn run_length(&self) -> u64 {
        self.run
    }

    pub fn row(&self) -> &Row2 {
        &self.row
    }

    /// `r(x)_i`.
    pub fn r(&self) -> BigUint {
        self.row.dot_u0()
    }

    /// Consumes digit `x_i` and moves to position `i + 1`.
    pub fn push(&mut self, bit: bool) -> Growth {
        self.row = self.row.push_digit(bit);
        self.position += 1;
        if bit {
            self.run += 1;
            if self.run == 1 {
                Growth::Open
            } else {
                Growth::Extend(self.run)
            }
        } else {
            self.run = 0;
            Growth::Flat
        }
    }
}

/// `r(x)_1, ..., r(x)_k`.
pub fn r_sequence(x: &BitStream, k: usize) -> Vec<BigUint> {
    let mut state = RunState::new();
    let mut out = Vec::with_capacity(k);
    let mut bits = x.iter();
    for _ in 0..k {
        out.push(state.r());
        state.push(bits.next().unwrap());
    }
    out
}

/// `b_i = a M_1^{i-1} u_0 = (2^{i+1} + (-1)^i) / 3` for `i >= 1`.
pub fn b_coefficient(i: u64) -> BigUint {
    assert!(i >= 1);
    let p = BigUint::one() << (i + 1) as usize;
    if i.is_multiple_of(2) {
        (p + 1u32) / 3u32
    } else {
        (p - 1u32) / 3u32
    }
}
