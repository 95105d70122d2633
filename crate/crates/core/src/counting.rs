//! Nonzero-cell counts of Rule 150 from the single site seed.
//!
//! `num(n)` is the number of 1 cells in row `n` and `cum(n)` the total over
//! rows `0..=n`, with `num(-1) = cum(-1) = 0`. Each quantity has a direct
//! simulation and at least one independent algebraic route:
//!
//! - `num(n) = a M_{n_{l-1}} ... M_{n_0} u_0` over the binary digits of `n`,
//!   which factors over maximal runs of 1s;
//! - `cum(2^k - 1) = a M^{k-1} v_0`, with an integer closed form in Q(√5);
//! - `cum(m - 1)` as a digit-weighted sum of `cum(2^j - 1)` blocks.

use std::ops::Mul;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::eca::{single_site_seed, Rule};
use crate::error::{domain, Result};
use crate::quadratic::QSqrt5;

/// A 2×2 matrix of natural numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2(pub [[BigUint; 2]; 2]);

/// A 1×2 row vector of natural numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row2(pub [BigUint; 2]);

fn n(v: u32) -> BigUint {
    BigUint::from(v)
}

impl Mat2 {
    pub fn new(a: u32, b: u32, c: u32, d: u32) -> Self {
        Mat2([[n(a), n(b)], [n(c), n(d)]])
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    /// Transition matrix of the block counts `cum(2^k - 1)`.
    pub fn block() -> Self {
        Self::new(2, 4, 1, 0)
    }

    /// Digit matrix `M_0` or `M_1`.
    pub fn digit(bit: bool) -> Self {
        if bit {
            Self::new(1, 2, 1, 0)
        } else {
            Self::new(1, 0, 1, 0)
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: &Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        Mat2([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }
}

impl Row2 {
    /// `a = (1 0)`.
    pub fn unit() -> Self {
        Row2([n(1), n(0)])
    }

    /// `self · M_bit`, the only products the digit recursions need.
    pub fn push_digit(&self, bit: bool) -> Self {
        let [u, v] = &self.0;
        let s = u + v;
        if bit {
            Row2([s, u << 1])
        } else {
            Row2([s, BigUint::zero()])
        }
    }

    /// `self · u_0` with `u_0 = (1, 1)ᵀ`.
    pub fn dot_u0(&self) -> BigUint {
        &self.0[0] + &self.0[1]
    }

    /// `self · v_0` with `v_0 = (4, 1)ᵀ`.
    pub fn dot_v0(&self) -> BigUint {
        (&self.0[0] << 2) + &self.0[1]
    }
}

impl Mul<&Mat2> for &Row2 {
    type Output = Row2;

    fn mul(self, m: &Mat2) -> Row2 {
        let [u, v] = &self.0;
        let m = &m.0;
        Row2([u * &m[0][0] + v * &m[1][0], u * &m[0][1] + v * &m[1][1]])
    }
}

/// Binary digits of `n`, most significant first; empty for 0.
pub fn digits_msb(n: &BigUint) -> Vec<bool> {
    (0..n.bits()).rev().map(|b| n.bit(b)).collect()
}

fn check_index(n: i64) -> Result<()> {
    if n < -1 {
        Err(domain(format!("time step {n} < -1")))
    } else {
        Ok(())
    }
}

/// `num(t)` for `t = 0..=upto`, from one simulation run.
pub fn num_direct_table(upto: usize) -> Vec<BigUint> {
    Rule::RULE_150
        .orbit(single_site_seed())
        .take(upto + 1)
        .map(|row| BigUint::from(row.count_ones()))
        .collect()
}

/// `cum(t)` for `t = 0..=upto`, from one simulation run.
pub fn cum_direct_table(upto: usize) -> Vec<BigUint> {
    let mut acc = BigUint::zero();
    num_direct_table(upto)
        .into_iter()
        .map(|x| {
            acc += x;
            acc.clone()
        })
        .collect()
}

/// Number of 1 cells in row `n`, by simulation.
pub fn num_direct(n: i64) -> Result<BigUint> {
    check_index(n)?;
    if n == -1 {
        return Ok(BigUint::zero());
    }
    Ok(num_direct_table(n as usize).pop().unwrap())
}

/// Number of 1 cells in rows `0..=n`, by simulation.
pub fn cum_direct(n: i64) -> Result<BigUint> {
    check_index(n)?;
    if n == -1 {
        return Ok(BigUint::zero());
    }
    Ok(cum_direct_table(n as usize).pop().unwrap())
}

/// `a M_{w_1} ... M_{w_l}` for a digit word.
pub fn digit_row(word: &[bool]) -> Row2 {
    word.iter().fold(Row2::unit(), |row, &b| row.push_digit(b))
}

/// `a M_{w_1} ... M_{w_l} u_0`.
pub fn digit_product(word: &[bool]) -> BigUint {
    digit_row(word).dot_u0()
}

/// `num(n)` as a product of digit matrices.
pub fn num_matrix(n: &BigUint) -> BigUint {
    digit_product(&digits_msb(n))
}

/// `a M_1^r u_0 = (2^{r+2} + (-1)^{r+1}) / 3`, the count contributed by a
/// run of `r` ones.
pub fn cluster_factor(r: u64) -> BigUint {
    let p = BigUint::one() << (r + 2) as usize;
    if r.is_multiple_of(2) {
        (p - 1u32) / 3u32
    } else {
        (p + 1u32) / 3u32
    }
}

/// Lengths of the maximal runs of 1s in a digit word.
pub fn run_lengths(word: &[bool]) -> Vec<u64> {
    word.split(|&b| !b)
        .filter(|run| !run.is_empty())
        .map(|run| run.len() as u64)
        .collect()
}

/// `num(n)` as a product over the runs of 1s in the binary expansion of `n`.
pub fn num_cluster(n: &BigUint) -> BigUint {
    run_lengths(&digits_msb(n))
        .into_iter()
        .map(cluster_factor)
        .product()
}

/// `cum(2^k - 1) = a M^{k-1} v_0` by repeated squaring.
pub fn cum_pow2(k: u64) -> Result<BigUint> {
    if k == 0 {
        return Err(domain("cum_pow2 needs k >= 1"));
    }
    Ok((&Row2::unit() * &Mat2::block().pow(k - 1)).dot_v0())
}

/// `cum(2^k - 1) = √5/20 ((1+√5)^{k+2} - (1-√5)^{k+2})`, evaluated in Q(√5).
pub fn cum_pow2_closed(k: u64) -> Result<QSqrt5> {
    if k == 0 {
        return Err(domain("cum_pow2_closed needs k >= 1"));
    }
    let e = u32::try_from(k + 2).map_err(|_| domain("exponent too large"))?;
    let plus = QSqrt5::new(1, 1, 1).pow(e);
    let minus = QSqrt5::new(1, -1, 1).pow(e);
    Ok(&QSqrt5::new(0, 1, 20) * &(&plus - &minus))
}

/// `cum(2^j - 1)` for `j = 0..count`, with `cum(0) = 1`.
pub fn block_counts(count: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(count);
    let mut row = Row2::unit();
    let m = Mat2::block();
    for j in 0..count {
        if j == 0 {
            out.push(BigUint::one());
        } else {
            out.push(row.dot_v0());
            row = &row * &m;
        }
    }
    out
}

/// Same as [`block_counts`], read off the closed form.
pub fn block_counts_closed(count: usize) -> Vec<BigUint> {
    (0..count)
        .map(|j| {
            if j == 0 {
                return BigUint::one();
            }
            let v = cum_pow2_closed(j as u64).unwrap();
            assert!(v.is_integer(), "closed form is not an integer at k = {j}");
            v.p().to_biguint().unwrap()
        })
        .collect()
}

/// `cum(m - 1)` from the binary digits `x_1 .. x_k` of `m` (most significant
/// first): every 1 digit at position `i` contributes the count of the prefix
/// `x_1 .. x_{i-1}` read as an integer, times the block `cum(2^{k-i} - 1)`.
pub fn cum_decompose(m: &BigUint) -> Result<BigUint> {
    if m.is_zero() {
        return Err(domain("cum_decompose needs m >= 1"));
    }
    let digits = digits_msb(m);
    Ok(decompose_with(&digits, &block_counts(digits.len())))
}

/// [`cum_decompose`] with every block count taken from the closed form.
pub fn cum_decompose_closed(m: &BigUint) -> Result<BigUint> {
    if m.is_zero() {
        return Err(domain("cum_decompose needs m >= 1"));
    }
    let digits = digits_msb(m);
    Ok(decompose_with(&digits, &block_counts_closed(digits.len())))
}

/// `blocks[j]` must hold `cum(2^j - 1)` for `j < digits.len()`.
pub(crate) fn decompose_with(digits: &[bool], blocks: &[BigUint]) -> BigUint {
    let k = digits.len();
    let mut prefix = Row2::unit();
    let mut total = BigUint::zero();
    for (i, &bit) in digits.iter().enumerate() {
        if bit {
            total += prefix.dot_u0() * &blocks[k - 1 - i];
        }
        prefix = prefix.push_digit(bit);
    }
    total
}

/// `cum(n)` for any `n >= -1` without simulation.
pub fn cum_fast(n: i64) -> Result<BigUint> {
    check_index(n)?;
    if n == -1 {
        return Ok(BigUint::zero());
    }
    cum_decompose(&BigUint::from(n as u64 + 1))
}
