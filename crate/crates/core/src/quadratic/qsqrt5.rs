use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element `(p + q√5) / d` of the field Q(√5).
///
/// The triple is kept canonical: `d > 0` and `gcd(p, q, d) = 1`, so derived
/// equality and hashing agree with equality of the real numbers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSqrt5 {
    p: BigInt,
    q: BigInt,
    d: BigInt,
}

impl QSqrt5 {
    /// Canonicalizes `(p + q√5) / d`. Panics if `d` is zero.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        let (mut p, mut q, mut d) = (p.into(), q.into(), d.into());
        assert!(!d.is_zero(), "zero denominator");
        if d.is_negative() {
            p = -p;
            q = -q;
            d = -d;
        }
        if p.is_zero() && q.is_zero() {
            return Self::zero();
        }
        let g = p.gcd(&q).gcd(&d);
        if !g.is_one() {
            p /= &g;
            q /= &g;
            d /= &g;
        }
        Self { p, q, d }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::new(n, 0, 1)
    }

    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Self::new(num, 0, den)
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::new(r.numer().clone(), 0, r.denom().clone())
    }

    /// √5.
    pub fn sqrt5() -> Self {
        Self::new(0, 1, 1)
    }

    pub fn zero() -> Self {
        Self {
            p: BigInt::zero(),
            q: BigInt::zero(),
            d: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// True when the √5 coefficient vanishes.
    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// True for rational integers.
    pub fn is_integer(&self) -> bool {
        self.q.is_zero() && self.d.is_one()
    }

    /// The rational value, if there is no √5 part.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.p.clone(), self.d.clone()))
    }

    /// Galois conjugate `(p - q√5) / d`.
    pub fn conjugate(&self) -> Self {
        Self {
            p: self.p.clone(),
            q: -&self.q,
            d: self.d.clone(),
        }
    }

    /// Field norm `(p² - 5q²) / d²`, a rational number.
    pub fn norm(&self) -> BigRational {
        BigRational::new(
            &self.p * &self.p - BigInt::from(5) * &self.q * &self.q,
            &self.d * &self.d,
        )
    }

    /// Exact sign of the real value.
    pub fn signum(&self) -> Ordering {
        sign_of(&self.p, &self.q)
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // d / (p + q√5) = d (p - q√5) / (p² - 5q²), and p² ≠ 5q² unless both vanish
        let n = &self.p * &self.p - BigInt::from(5) * &self.q * &self.q;
        Ok(Self::new(&self.d * &self.p, -(&self.d * &self.q), n))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = exp;
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

    /// Multiplies by `2^k` without a general multiplication.
    pub fn mul_pow2(&self, k: u32) -> Self {
        Self::new(&self.p << k as usize, &self.q << k as usize, self.d.clone())
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        Self::new(&self.p * n, &self.q * n, self.d.clone())
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        floor_div_sqrt5(&self.p, &self.q, &self.d)
    }

    /// Decimal rendering with exactly `digits` fractional digits, rounded
    /// to nearest with ties to even. Computed with integer arithmetic only.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let rounded = if self.is_rational() {
            round_half_even(&(&self.p * &scale), &self.d)
        } else {
            // irrational values are never at a tie
            let two = BigInt::from(2);
            floor_div_sqrt5(
                &(&two * &scale * &self.p + &self.d),
                &(&two * &scale * &self.q),
                &(&two * &self.d),
            )
        };
        format_fixed(&rounded, digits)
    }

    /// Nearest `f64`, for plotting and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        self.to_decimal(20).parse().unwrap_or(f64::NAN)
    }
}

/// Sign of `p + q√5`.
pub(crate) fn sign_of(p: &BigInt, q: &BigInt) -> Ordering {
    let (sp, sq) = (p.sign(), q.sign());
    match (sp, sq) {
        (Sign::NoSign, Sign::NoSign) => Ordering::Equal,
        (Sign::Plus | Sign::NoSign, Sign::Plus | Sign::NoSign) => Ordering::Greater,
        (Sign::Minus | Sign::NoSign, Sign::Minus | Sign::NoSign) => Ordering::Less,
        _ => {
            let p2 = p * p;
            let q2 = BigInt::from(5) * q * q;
            // the positive term wins when its square is larger
            if sp == Sign::Plus {
                p2.cmp(&q2)
            } else {
                q2.cmp(&p2)
            }
        }
    }
}

/// `floor((a + b√5) / d)` for `d > 0`.
fn floor_div_sqrt5(a: &BigInt, b: &BigInt, d: &BigInt) -> BigInt {
    debug_assert!(d.is_positive());
    let t: BigUint = (BigUint::from(5u32) * b.magnitude() * b.magnitude()).sqrt();
    let t = BigInt::from(t);
    // floor(a + b√5): b√5 lies strictly between consecutive integers unless b = 0
    let whole = match b.sign() {
        Sign::NoSign => a.clone(),
        Sign::Plus => a + t,
        Sign::Minus => a - t - 1,
    };
    whole.div_floor(d)
}

fn round_half_even(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_mod_floor(d);
    let twice: BigInt = &r * 2u32;
    match twice.cmp(d) {
        Ordering::Less => q,
        Ordering::Greater => q + 1,
        Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1
            }
        }
    }
}

fn format_fixed(scaled: &BigInt, digits: usize) -> String {
    let neg = scaled.is_negative();
    let mag = scaled.magnitude().to_string();
    let padded = if mag.len() <= digits {
        format!("{}{mag}", "0".repeat(digits + 1 - mag.len()))
    } else {
        mag
    };
    let (int, frac) = padded.split_at(padded.len() - digits);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

impl Default for QSqrt5 {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for QSqrt5 {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<&BigUint> for QSqrt5 {
    fn from(n: &BigUint) -> Self {
        Self::from_int(BigInt::from(n.clone()))
    }
}

impl PartialOrd for QSqrt5 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QSqrt5 {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        // both denominators are positive, so compare the cross-multiplied difference
        let p = &self.p * &other.d - &other.p * &self.d;
        let q = &self.q * &other.d - &other.q * &self.d;
        sign_of(&p, &q)
    }
}

impl fmt::Debug for QSqrt5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}√5)/{}", self.p, self.q, self.d)
    }
}

impl fmt::Display for QSqrt5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<'a> Add<&'a QSqrt5> for &QSqrt5 {
    type Output = QSqrt5;

    fn add(self, rhs: &'a QSqrt5) -> QSqrt5 {
        if self.d == rhs.d {
            return QSqrt5::new(&self.p + &rhs.p, &self.q + &rhs.q, self.d.clone());
        }
        QSqrt5::new(
            &self.p * &rhs.d + &rhs.p * &self.d,
            &self.q * &rhs.d + &rhs.q * &self.d,
            &self.d * &rhs.d,
        )
    }
}

impl<'a> Sub<&'a QSqrt5> for &QSqrt5 {
    type Output = QSqrt5;

    fn sub(self, rhs: &'a QSqrt5) -> QSqrt5 {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a QSqrt5> for &QSqrt5 {
    type Output = QSqrt5;

    fn mul(self, rhs: &'a QSqrt5) -> QSqrt5 {
        QSqrt5::new(
            &self.p * &rhs.p + BigInt::from(5) * &self.q * &rhs.q,
            &self.p * &rhs.q + &self.q * &rhs.p,
            &self.d * &rhs.d,
        )
    }
}

/// Panics on division by zero; use [`QSqrt5::checked_div`] otherwise.
impl<'a> Div<&'a QSqrt5> for &QSqrt5 {
    type Output = QSqrt5;

    fn div(self, rhs: &'a QSqrt5) -> QSqrt5 {
        self.checked_div(rhs).expect("division by zero in Q(√5)")
    }
}

impl Neg for &QSqrt5 {
    type Output = QSqrt5;

    fn neg(self) -> QSqrt5 {
        QSqrt5 {
            p: -&self.p,
            q: -&self.q,
            d: self.d.clone(),
        }
    }
}

impl Neg for QSqrt5 {
    type Output = QSqrt5;

    fn neg(self) -> QSqrt5 {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<QSqrt5> for QSqrt5 {
            type Output = QSqrt5;
            fn $m(self, rhs: QSqrt5) -> QSqrt5 {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QSqrt5> for QSqrt5 {
            type Output = QSqrt5;
            fn $m(self, rhs: &'a QSqrt5) -> QSqrt5 {
                (&self).$m(rhs)
            }
        }
        impl $tr<QSqrt5> for &QSqrt5 {
            type Output = QSqrt5;
            fn $m(self, rhs: QSqrt5) -> QSqrt5 {
                self.$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl std::iter::Sum for QSqrt5 {
    fn sum<I: Iterator<Item = QSqrt5>>(iter: I) -> Self {
        iter.fold(QSqrt5::zero(), |acc, x| acc + x)
    }
}

/// `α = (√5 - 1) / 4`, the root of `4x² + 2x - 1` in `(0, 1/3)`.
pub fn alpha() -> QSqrt5 {
    QSqrt5::new(-1, 1, 4)
}

pub fn qs_add(a: &QSqrt5, b: &QSqrt5) -> QSqrt5 {
    a + b
}

pub fn qs_mul(a: &QSqrt5, b: &QSqrt5) -> QSqrt5 {
    a * b
}

pub fn qs_neg(a: &QSqrt5) -> QSqrt5 {
    -a
}

pub fn qs_inv(a: &QSqrt5) -> Result<QSqrt5> {
    a.inv()
}

pub fn qs_compare(a: &QSqrt5, b: &QSqrt5) -> Ordering {
    a.cmp(b)
}

pub fn qs_to_decimal(a: &QSqrt5, digits: usize) -> String {
    a.to_decimal(digits)
}
