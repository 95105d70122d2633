//! Difference quotients of `F`.
//!
//! At an interior dyadic `x` ending at digit `k`, the quotient from the left
//! over `y_m = x - 2^{-m}` grows without bound while the quotient from the
//! right over `z_m = x + 2^{1-m}` decays like `(2α)^m`, so `F` has no
//! derivative there. At other points the depth-`k` bracketing quotient
//! `2^k r(x)_k α^k` is tracked; its successive ratios are `2α`, `6α`, or a
//! run constant `D_l` in `[10α/3, 22α/5]`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::error::{domain, Result};
use crate::quadratic::{alpha, BitStream, Dyadic, QSqrt5};
use crate::singular::{b_coefficient, eval_dyadic_exact, r_sequence, Growth, RunState};

/// Which neighbor a difference quotient is taken against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    /// The bracketing dyadic interval of the point.
    Symmetric,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::Symmetric => "symmetric",
        })
    }
}

/// One difference quotient, exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientReport {
    pub point: String,
    pub side: Side,
    pub m: u32,
    pub quotient: QSqrt5,
}

fn interior(x: &Dyadic) -> Result<u32> {
    if !x.is_interior() {
        return Err(domain(format!("{x} is not a dyadic rational in (0, 1)")));
    }
    Ok(x.depth())
}

fn r_at(x: &Dyadic, i: u32) -> BigUint {
    r_sequence(&x.bits(), i as usize).pop().unwrap()
}

/// `Σ_{i>=n} b_i α^i = (2 (2α)^n / (1 - 2α) + (-α)^n / (1 + α)) / 3`.
pub fn ones_tail_sum(n: u32) -> QSqrt5 {
    let a = alpha();
    let one = QSqrt5::one();
    let two_a = &a + &a;
    let first = &(&QSqrt5::from(2) * &two_a.pow(n)) / &(&one - &two_a);
    let second = &(-&a).pow(n) / &(&one + &a);
    &(&first + &second) / &QSqrt5::from(3)
}

/// `(F(x) - F(y_m)) / (x - y_m)` with `y_m = x - 2^{-m}`, in closed form
/// `2^m r(x)_k α^k Σ_{i>m-k} b_i α^i`.
pub fn left_quotient(x: &Dyadic, m: u32) -> Result<QSqrt5> {
    let k = interior(x)?;
    if m <= k {
        return Err(domain(format!("left quotient needs m > {k}, got {m}")));
    }
    let r = QSqrt5::from(&r_at(x, k));
    let head = &r * &alpha().pow(k);
    Ok((&head * &ones_tail_sum(m - k + 1)).mul_pow2(m))
}

/// The left quotient from two evaluations of `F`.
pub fn left_quotient_direct(x: &Dyadic, m: u32) -> Result<QSqrt5> {
    let k = interior(x)?;
    if m <= k {
        return Err(domain(format!("left quotient needs m > {k}, got {m}")));
    }
    let y = x.checked_sub(&Dyadic::pow2_inv(m))?;
    Ok((&eval_dyadic_exact(x) - &eval_dyadic_exact(&y)).mul_pow2(m))
}

/// `(F(z_m) - F(x)) / (z_m - x)` with `z_m = x + 2^{1-m}`, equal to
/// `r(x)_{k+1} (2α)^{m-1}`.
pub fn right_quotient(x: &Dyadic, m: u32) -> Result<QSqrt5> {
    let k = interior(x)?;
    if m < k + 2 {
        return Err(domain(format!(
            "right quotient needs m >= {}, got {m}",
            k + 2
        )));
    }
    let r = QSqrt5::from(&r_at(x, k + 1));
    Ok(&r * &(&alpha() + &alpha()).pow(m - 1))
}

/// The right quotient from two evaluations of `F`.
pub fn right_quotient_direct(x: &Dyadic, m: u32) -> Result<QSqrt5> {
    let k = interior(x)?;
    if m < k + 2 {
        return Err(domain(format!(
            "right quotient needs m >= {}, got {m}",
            k + 2
        )));
    }
    let z = x.checked_add(&Dyadic::pow2_inv(m - 1))?;
    Ok((&eval_dyadic_exact(&z) - &eval_dyadic_exact(x)).mul_pow2(m - 1))
}

/// `2^k r(x)_k α^k`, the quotient of `F` over the depth-`k` dyadic interval
/// containing `x`.
pub fn dyadic_quotient_statistic(x: &BitStream, k: u32) -> Result<QSqrt5> {
    if k == 0 {
        return Err(domain("k must be positive"));
    }
    let r = r_sequence(x, k as usize).pop().unwrap();
    Ok((&QSqrt5::from(&r) * &alpha().pow(k)).mul_pow2(k))
}

/// Kind of step between consecutive bracketing quotients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RatioClass {
    /// Digit 0: ratio `2α`.
    Zero,
    /// Digit 1 after a 0: ratio `6α`.
    RunStart,
    /// Digit 1 extending a run to length `l`: ratio `D_l`.
    RunExtend(u64),
}

/// `D_l = 2α b_{l+1} / b_l` for a run of length `l >= 2`.
pub fn run_ratio(l: u64) -> QSqrt5 {
    assert!(l >= 2);
    let b = |i| QSqrt5::from(&b_coefficient(i));
    &(&(&alpha() + &alpha()) * &b(l + 1)) / &b(l)
}

/// Successive ratios `q_{j+1} / q_j` of [`dyadic_quotient_statistic`] for
/// `j = 1 .. k - 1`, with the digit class that produced each.
pub fn statistic_ratios(x: &BitStream, k: u32) -> Vec<(RatioClass, QSqrt5)> {
    let two_a = &alpha() + &alpha();
    let mut state = RunState::new();
    let mut bits = x.iter();
    let mut out = Vec::new();
    for _ in 1..k {
        let before = state.r();
        let class = match state.push(bits.next().unwrap()) {
            Growth::Flat => RatioClass::Zero,
            Growth::Open => RatioClass::RunStart,
            Growth::Extend(l) => RatioClass::RunExtend(l),
        };
        let ratio = QSqrt5::new(BigInt::from(state.r()), 0, BigInt::from(before));
        out.push((class, &two_a * &ratio));
    }
    out
}

/// Result of [`derivative_zero_sample`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroDerivativeSample {
    pub below: usize,
    pub count: usize,
}

impl ZeroDerivativeSample {
    pub fn fraction(&self) -> BigRational {
        BigRational::new(self.below.into(), self.count.into())
    }
}

/// Threshold under which a bracketing quotient counts as vanishing.
pub fn vanishing_threshold() -> BigRational {
    BigRational::new(1.into(), 1000.into())
}

/// Counts how many of `count` uniform random expansions (streams
/// `0..count` of `seed`) have `2^k r(x)_k α^k < 10^-3`.
pub fn derivative_zero_sample(seed: u64, count: usize, k: u32) -> Result<ZeroDerivativeSample> {
    if count == 0 || k == 0 {
        return Err(domain("count and k must be positive"));
    }
    let scale = alpha().pow(k).mul_pow2(k);
    let threshold = QSqrt5::from_rational(&vanishing_threshold());
    let below = (0..count as u64)
        .filter(|&j| {
            let r = r_sequence(&BitStream::random(seed, j), k as usize)
                .pop()
                .unwrap();
            scale.scale(&BigInt::from(r)) < threshold
        })
        .count();
    Ok(ZeroDerivativeSample { below, count })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::Tail;

    fn d(m: u64, i: u32) -> Dyadic {
        Dyadic::new(m, i).unwrap()
    }

    fn q(v: i64) -> QSqrt5 {
        QSqrt5::from(v)
    }

    #[test]
    fn tail_sum_matches_series() {
        // Σ_{i>=1} b_i α^i = 1
        assert_eq!(ones_tail_sum(1), QSqrt5::one());
        let mut partial = QSqrt5::zero();
        for i in 1..=10u64 {
            partial = &partial + &(&QSqrt5::from(&b_coefficient(i)) * &alpha().pow(i as u32));
            assert_eq!(&partial + &ones_tail_sum(i as u32 + 1), QSqrt5::one());
        }
    }

    #[test]
    fn left_closed_form_equals_difference() {
        for x in [d(1, 1), d(3, 2), d(5, 3), d(13, 4)] {
            for m in x.depth() + 1..=x.depth() + 12 {
                assert_eq!(
                    left_quotient(&x, m).unwrap(),
                    left_quotient_direct(&x, m).unwrap()
                );
            }
        }
    }

    #[test]
    fn right_closed_form_equals_difference() {
        let two_a = &alpha() + &alpha();
        for m in 3..=20 {
            let v = right_quotient(&d(1, 1), m).unwrap();
            assert_eq!(v, &q(3) * &two_a.pow(m - 1));
            assert_eq!(v, right_quotient_direct(&d(1, 1), m).unwrap());
        }
        assert_eq!(right_quotient(&d(3, 2), 4).unwrap(), &q(5) * &two_a.pow(3));
        assert_eq!(
            right_quotient_direct(&d(3, 2), 4).unwrap(),
            &q(5) * &two_a.pow(3)
        );
    }

    #[test]
    fn small_values() {
        assert!(right_quotient(&d(1, 1), 50).unwrap() < QSqrt5::from_ratio(1, 1_000_000_000));
        let ratio = &left_quotient(&d(1, 1), 40).unwrap() / &left_quotient(&d(1, 1), 20).unwrap();
        let growth = (&alpha() * &q(4)).pow(20);
        // the (-2α)^m term makes the ratio fall just short of (4α)^20
        assert!(ratio < growth);
        assert!(ratio > &growth * &QSqrt5::from_ratio(999_999, 1_000_000));
    }

    #[test]
    fn domain_errors() {
        assert!(left_quotient(&Dyadic::zero(), 3).is_err());
        assert!(left_quotient(&Dyadic::one(), 3).is_err());
        assert!(left_quotient(&d(1, 1), 1).is_err());
        assert!(right_quotient(&d(1, 1), 2).is_err());
        assert!(dyadic_quotient_statistic(&d(1, 1).bits(), 0).is_err());
    }

    #[test]
    fn statistic_examples() {
        let zeros = BitStream::new(vec![], Tail::Zeros);
        for k in [1, 5, 17] {
            assert_eq!(
                dyadic_quotient_statistic(&zeros, k).unwrap(),
                (&alpha() + &alpha()).pow(k)
            );
        }
        let x = BitStream::new(vec![false, true, true, true], Tail::Zeros);
        let ratios = statistic_ratios(&x, 6);
        let a = alpha();
        assert_eq!(ratios[0], (RatioClass::Zero, &q(2) * &a));
        assert_eq!(ratios[1], (RatioClass::RunStart, &q(6) * &a));
        assert_eq!(
            ratios[2],
            (RatioClass::RunExtend(2), &(&q(10) * &a) / &q(3))
        );
        assert_eq!(
            ratios[3],
            (RatioClass::RunExtend(3), &(&q(22) * &a) / &q(5))
        );
        assert_eq!(ratios[4].0, RatioClass::Zero);
    }

    #[test]
    fn run_ratio_extremes() {
        let a = alpha();
        let lo = &(&q(10) * &a) / &q(3);
        let hi = &(&q(22) * &a) / &q(5);
        assert_eq!(run_ratio(2), lo);
        assert_eq!(run_ratio(3), hi);
        for l in 2..60 {
            let v = run_ratio(l);
            assert!(lo <= v && v <= hi, "l = {l}");
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = derivative_zero_sample(11, 20, 120).unwrap();
        assert_eq!(a, derivative_zero_sample(11, 20, 120).unwrap());
        assert!(derivative_zero_sample(0, 0, 10).is_err());
    }
}
