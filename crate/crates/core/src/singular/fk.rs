use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use crate::counting::{block_counts, cum_direct_table, decompose_with, digits_msb};
use crate::error::{domain, Error, Result};
use crate::quadratic::Dyadic;

/// Largest `k` accepted by [`eval_fk_simulated`].
pub const FK_SIMULATION_LIMIT: u32 = 16;

fn scaled_numerator(x: &Dyadic, k: u32) -> Result<BigUint> {
    if k == 0 {
        return Err(domain("k must be positive"));
    }
    x.numer_at(k)
        .ok_or_else(|| domain(format!("{x} has expansion depth {} > k = {k}", x.depth())))
}

/// `F_k(x) = cum(m - 1) / cum(2^k - 1)` with `m = 2^k x`, exactly.
pub fn eval_fk(x: &Dyadic, k: u32) -> Result<BigRational> {
    let m = scaled_numerator(x, k)?;
    let blocks = block_counts(k as usize + 1);
    let num = if m.is_zero() {
        BigUint::zero()
    } else {
        decompose_with(&digits_msb(&m), &blocks)
    };
    Ok(BigRational::new(
        num.into(),
        blocks[k as usize].clone().into(),
    ))
}

/// `F_k(x)` with both counts taken from a direct simulation of the automaton.
pub fn eval_fk_simulated(x: &Dyadic, k: u32) -> Result<BigRational> {
    if k > FK_SIMULATION_LIMIT {
        return Err(Error::ResourceLimit {
            what: "k",
            value: u64::from(k),
            limit: u64::from(FK_SIMULATION_LIMIT),
        });
    }
    let m = scaled_numerator(x, k)?;
    let cums = cum_direct_table((1usize << k) - 1);
    let m: usize = m.try_into().expect("bounded by 2^k");
    let num = if m == 0 {
        BigUint::zero()
    } else {
        cums[m - 1].clone()
    };
    Ok(BigRational::new(
        num.into(),
        cums.last().unwrap().clone().into(),
    ))
}
