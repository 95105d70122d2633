use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::runstate::RunState;
use crate::counting::Mat2;
use crate::error::{domain, Result};
use crate::quadratic::{alpha, sign_of, BitStream, Dyadic, QSqrt5, Tail};

/// Running value of `Σ_{i<=n} x_i r(x)_i α^i`.
///
/// Since `α^i = (√5 - 1)^i / 4^i`, the sum is kept as an integer pair over
/// the common denominator `4^n` and only reduced on request.
#[derive(Clone, Debug)]
pub struct PartialSum {
    acc: (BigInt, BigInt),
    pow: (BigInt, BigInt),
    state: RunState,
}

impl Default for PartialSum {
    fn default() -> Self {
        Self::new()
    }
}

impl PartialSum {
    pub fn new() -> Self {
        Self {
            acc: (BigInt::zero(), BigInt::zero()),
            pow: (BigInt::from(1), BigInt::zero()),
            state: RunState::new(),
        }
    }

    /// Number of digits consumed.
    pub fn depth(&self) -> u64 {
        self.state.position() - 1
    }

    /// Coefficient state for the next digit.
    pub fn state(&self) -> &RunState {
        &self.state
    }

    pub fn push(&mut self, bit: bool) {
        let (c, d) = &self.pow;
        // (c + d√5)(√5 - 1)
        self.pow = (BigInt::from(5) * d - c, c - d);
        self.acc.0 <<= 2;
        self.acc.1 <<= 2;
        if bit {
            let r = BigInt::from(self.state.r());
            self.acc.0 += &r * &self.pow.0;
            self.acc.1 += &r * &self.pow.1;
        }
        self.state.push(bit);
    }

    pub fn value(&self) -> QSqrt5 {
        QSqrt5::new(
            self.acc.0.clone(),
            self.acc.1.clone(),
            BigInt::from(1) << (2 * self.depth()) as usize,
        )
    }

    /// Whether `r(x)_{n+1} α^{n+1} / (1 - 3α) <= eps`, which bounds every
    /// continuation of the current prefix.
    fn tail_bound_within(&self, eps: &BigRational) -> bool {
        let r = BigInt::from(self.state.r());
        let (c, d) = &self.pow;
        // α / (1 - 3α) = √5 + 2, so the bound is r (√5 - 1)^n (√5 + 2) / 4^n
        let bp = &r * (BigInt::from(2) * c + BigInt::from(5) * d);
        let bq = &r * (c + BigInt::from(2) * d);
        let scale = BigInt::from(1) << (2 * self.depth()) as usize;
        let lhs_p = eps.numer() * scale - eps.denom() * bp;
        let lhs_q = -(eps.denom() * bq);
        sign_of(&lhs_p, &lhs_q) != Ordering::Less
    }

    /// The tail bound itself, `r(x)_{n+1} α^{n+1} / (1 - 3α)`.
    pub fn tail_bound(&self) -> QSqrt5 {
        let r = QSqrt5::from(&self.state.r());
        let scale = BigInt::from(1) << (2 * self.depth()) as usize;
        let pow = QSqrt5::new(self.pow.0.clone(), self.pow.1.clone(), scale);
        &(&r * &pow) * &QSqrt5::new(2, 1, 1)
    }
}

/// `F(x)` summed over the digits of a finite word followed by zeros.
pub fn eval_word(word: &[bool]) -> QSqrt5 {
    let mut s = PartialSum::new();
    for &b in word {
        s.push(b);
    }
    s.value()
}

/// `F` at a dyadic rational, from the finite series over its terminating
/// expansion. `x = 1` has no terminating expansion and goes through
/// [`eval_periodic_exact`] with an all-ones period.
pub fn eval_dyadic_exact(x: &Dyadic) -> QSqrt5 {
    if x.is_one() {
        return eval_periodic_exact(&[], &[true]).expect("nonempty period");
    }
    eval_word(&x.digits())
}

fn qmat(m: &Mat2) -> [[QSqrt5; 2]; 2] {
    let e = |i: usize, j: usize| QSqrt5::from(&m.0[i][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// `F` at the point `0.head (period)(period)...`, in closed form.
///
/// One pass over the period maps the row `w` to `w P` and contributes
/// `α^{|head|} w c` with `c = Σ_j y_j α^j M_{y_1} ... M_{y_{j-1}} u_0`; later
/// passes are scaled by `α^p`, so the tail sums to
/// `α^{|head|} w (I - α^p P)^{-1} c`.
pub fn eval_periodic_exact(head: &[bool], period: &[bool]) -> Result<QSqrt5> {
    if period.is_empty() {
        return Err(domain("empty period"));
    }
    let mut head_sum = PartialSum::new();
    for &b in head {
        head_sum.push(b);
    }
    let w = head_sum.state().row().clone();

    let a = alpha();
    let mut prefix = Mat2::identity();
    let mut c = [QSqrt5::zero(), QSqrt5::zero()];
    let mut apow = QSqrt5::one();
    for &bit in period {
        apow = &apow * &a;
        if bit {
            // column P_{j-1} u_0
            let m = &prefix.0;
            let col = [&m[0][0] + &m[0][1], &m[1][0] + &m[1][1]];
            c[0] = &c[0] + &(&apow * &QSqrt5::from(&col[0]));
            c[1] = &c[1] + &(&apow * &QSqrt5::from(&col[1]));
        }
        prefix = &prefix * &Mat2::digit(bit);
    }
    let p = qmat(&prefix);
    let one = QSqrt5::one();
    let s00 = &one - &(&apow * &p[0][0]);
    let s01 = -(&apow * &p[0][1]);
    let s10 = -(&apow * &p[1][0]);
    let s11 = &one - &(&apow * &p[1][1]);
    let det = &(&s00 * &s11) - &(&s01 * &s10);
    assert!(!det.is_zero(), "I - α^p P is singular");
    let z0 = &(&(&c[0] * &s11) - &(&s01 * &c[1])) / &det;
    let z1 = &(&(&s00 * &c[1]) - &(&s10 * &c[0])) / &det;
    let w0 = QSqrt5::from(&w.0[0]);
    let w1 = QSqrt5::from(&w.0[1]);
    let tail = &(&w0 * &z0) + &(&w1 * &z1);
    let scale = a.pow(head.len() as u32);
    Ok(&head_sum.value() + &(&scale * &tail))
}

/// A closed interval `[lo, hi]` of Q(√5).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: QSqrt5,
    pub hi: QSqrt5,
    /// Number of digits summed before the bound was met.
    pub depth: u64,
}

impl Enclosure {
    pub fn width(&self) -> QSqrt5 {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &QSqrt5) -> bool {
        self.lo <= *v && *v <= self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

/// Encloses `F(x)` in an interval of width at most `eps`.
///
/// Digits are summed until the remaining series is bounded by
/// `r(x)_{K+1} α^{K+1} / (1 - 3α) <= eps` (each step multiplies `r` by at most
/// 3), or until only zeros remain, in which case the enclosure is exact.
pub fn eval_stream_enclosure(x: &BitStream, eps: &BigRational) -> Result<Enclosure> {
    if !eps.is_positive() {
        return Err(domain("eps must be positive"));
    }
    let mut sum = PartialSum::new();
    let mut bits = x.iter();
    loop {
        let depth = sum.depth() as usize;
        if x.zeros_after(depth) {
            let v = sum.value();
            return Ok(Enclosure {
                lo: v.clone(),
                hi: v,
                depth: depth as u64,
            });
        }
        if sum.tail_bound_within(eps) {
            let lo = sum.value();
            let hi = &lo + &sum.tail_bound();
            return Ok(Enclosure {
                lo,
                hi,
                depth: depth as u64,
            });
        }
        sum.push(bits.next().unwrap());
    }
}

/// `F` from a stream whose tail is constant or periodic; `None` for
/// generator tails.
pub fn eval_stream_exact(x: &BitStream) -> Option<QSqrt5> {
    match x.tail() {
        Tail::Zeros => Some(eval_word(x.head())),
        Tail::Generator { .. } => None,
        _ => Some(eval_periodic_exact(x.head(), &x.period()?).expect("nonempty period")),
    }
}

/// Whether the two binary expansions of an interior dyadic give the same
/// value of the series.
pub fn check_dual_representation(x: &Dyadic) -> Result<bool> {
    let alt = x
        .alternate_bits()
        .ok_or_else(|| domain(format!("{x} is not in (0, 1)")))?;
    let ones_tail = eval_periodic_exact(alt.head(), &[true])?;
    Ok(eval_word(&x.digits()) == ones_tail)
}

/// `F(m / 2^depth)` for `m = 0 ..= 2^depth`, in order.
pub fn grid_values(depth: u32) -> Vec<QSqrt5> {
    let mut out = Vec::with_capacity((1usize << depth) + 1);
    fn walk(sum: PartialSum, left: u32, out: &mut Vec<QSqrt5>) {
        if left == 0 {
            out.push(sum.value());
            return;
        }
        let mut zero = sum.clone();
        zero.push(false);
        walk(zero, left - 1, out);
        let mut one = sum;
        one.push(true);
        walk(one, left - 1, out);
    }
    walk(PartialSum::new(), depth, &mut out);
    out.push(QSqrt5::one());
    out
}

/// `Σ_{i=1}^{n} b_i α^i`, the partial sums of the expansion of `F(1)`.
pub fn ones_partial_sum(n: usize) -> QSqrt5 {
    eval_word(&vec![true; n])
}
