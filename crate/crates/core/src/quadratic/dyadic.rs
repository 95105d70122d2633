use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::bitstream::{BitStream, Tail};
use crate::error::{domain, Result};

/// A dyadic rational `m / 2^i` in `[0, 1]`, with `m` odd or `i = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    m: BigUint,
    i: u32,
}

impl Dyadic {
    /// `m / 2^i`, reduced. Fails outside `[0, 1]`.
    pub fn new(m: impl Into<BigUint>, i: u32) -> Result<Self> {
        let mut m = m.into();
        let mut i = i;
        if m > BigUint::one() << i as usize {
            return Err(domain(format!("{m}/2^{i} is not in [0, 1]")));
        }
        if m.is_zero() {
            return Ok(Self::zero());
        }
        let tz = m.trailing_zeros().unwrap_or(0).min(u64::from(i)) as u32;
        m >>= tz as usize;
        i -= tz;
        Ok(Self { m, i })
    }

    pub fn zero() -> Self {
        Self {
            m: BigUint::zero(),
            i: 0,
        }
    }

    pub fn one() -> Self {
        Self {
            m: BigUint::one(),
            i: 0,
        }
    }

    pub fn half() -> Self {
        Self {
            m: BigUint::one(),
            i: 1,
        }
    }

    pub fn numer(&self) -> &BigUint {
        &self.m
    }

    /// The exponent `i` of the reduced form, i.e. the length of the
    /// terminating binary expansion (0 for both 0 and 1).
    pub fn depth(&self) -> u32 {
        self.i
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.i == 0 && self.m.is_one()
    }

    /// True for points of the open interval `(0, 1)`.
    pub fn is_interior(&self) -> bool {
        self.i > 0
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(
            self.m.clone().into(),
            (BigUint::one() << self.i as usize).into(),
        )
    }

    /// Numerator over `2^depth` for a `depth` at least [`Self::depth`].
    pub fn numer_at(&self, depth: u32) -> Option<BigUint> {
        (depth >= self.i).then(|| &self.m << (depth - self.i) as usize)
    }

    /// The binary digits `x_1 .. x_i` of the terminating expansion.
    pub fn digits(&self) -> Vec<bool> {
        if self.is_one() {
            return Vec::new();
        }
        (0..self.i)
            .rev()
            .map(|b| self.m.bit(u64::from(b)))
            .collect()
    }

    /// `self + rhs`, if the result stays in `[0, 1]`.
    pub fn checked_add(&self, rhs: &Dyadic) -> Result<Dyadic> {
        let i = self.i.max(rhs.i);
        Dyadic::new(self.numer_at(i).unwrap() + rhs.numer_at(i).unwrap(), i)
    }

    /// `self - rhs`, if the result stays in `[0, 1]`.
    pub fn checked_sub(&self, rhs: &Dyadic) -> Result<Dyadic> {
        let i = self.i.max(rhs.i);
        let (a, b) = (self.numer_at(i).unwrap(), rhs.numer_at(i).unwrap());
        if a < b {
            return Err(domain("negative dyadic"));
        }
        Dyadic::new(a - b, i)
    }

    /// `2x`, if `x <= 1/2`.
    pub fn double(&self) -> Result<Dyadic> {
        if self.i == 0 {
            return if self.is_zero() {
                Ok(Self::zero())
            } else {
                Err(domain("2 is not in [0, 1]"))
            };
        }
        Dyadic::new(self.m.clone(), self.i - 1)
    }

    /// `x / 2^k`.
    pub fn shr(&self, k: u32) -> Dyadic {
        Dyadic::new(self.m.clone(), self.i + k).unwrap()
    }

    /// `1 / 2^k`.
    pub fn pow2_inv(k: u32) -> Dyadic {
        Dyadic::new(1u32, k).unwrap()
    }

    /// Compares the real values.
    pub fn cmp_value(&self, other: &Dyadic) -> std::cmp::Ordering {
        let i = self.i.max(other.i);
        self.numer_at(i).cmp(&other.numer_at(i))
    }

    /// The expansion ending in zeros. For `x = 1` there is none, and the
    /// all-ones expansion is returned instead.
    pub fn bits(&self) -> BitStream {
        if self.is_one() {
            return BitStream::new(Vec::new(), Tail::Ones);
        }
        BitStream::new(self.digits(), Tail::Zeros)
    }

    /// The expansion ending in ones, available for points of `(0, 1)`.
    pub fn alternate_bits(&self) -> Option<BitStream> {
        if !self.is_interior() {
            return None;
        }
        let mut head = self.digits();
        *head.last_mut().unwrap() = false;
        Some(BitStream::new(head, Tail::Ones))
    }

    /// Reads `0.x_1 x_2 ... x_n` in binary.
    pub fn from_digits(head: &[bool]) -> Dyadic {
        let mut m = BigUint::zero();
        for &b in head {
            m <<= 1;
            if b {
                m += 1u32;
            }
        }
        Dyadic::new(m, head.len() as u32).unwrap()
    }

    /// All `m / 2^depth` for `m = 0 ..= 2^depth`, in increasing order.
    pub fn grid(depth: u32) -> impl Iterator<Item = Dyadic> {
        let n = 1u64 << depth;
        (0..=n).map(move |m| Dyadic::new(m, depth).unwrap())
    }
}

/// Terminating expansion of `x`; see [`Dyadic::bits`].
pub fn bits_of(x: &Dyadic) -> BitStream {
    x.bits()
}

pub fn dyadic_of(head: &[bool]) -> Dyadic {
    Dyadic::from_digits(head)
}

impl TryFrom<&BigRational> for Dyadic {
    type Error = crate::Error;

    fn try_from(r: &BigRational) -> Result<Self> {
        let den = r.denom().magnitude();
        if r.numer().sign() == num_bigint::Sign::Minus || !den.is_power_of_two() {
            return Err(domain(format!("{r} is not a dyadic rational in [0, 1]")));
        }
        let i = den.bits() - 1;
        Dyadic::new(r.numer().magnitude().clone(), i as u32)
    }
}

trait PowerOfTwo {
    fn is_power_of_two(&self) -> bool;
}

impl PowerOfTwo for BigUint {
    fn is_power_of_two(&self) -> bool {
        !self.is_zero() && self.trailing_zeros() == Some(self.bits() - 1)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.m, self.i)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.i == 0 {
            write!(f, "{}", self.m)
        } else {
            write!(f, "{}/{}", self.m, BigUint::one() << self.i as usize)
        }
    }
}
