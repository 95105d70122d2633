use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Result};

/// What follows the finite head of a binary expansion.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Tail {
    Zeros,
    Ones,
    /// The word repeated forever; never empty.
    Periodic(Vec<bool>),
    /// Uniform random bits from a seeded ChaCha8 stream. Every consumer
    /// replays the same bits.
    Generator {
        seed: u64,
        stream: u64,
    },
}

impl fmt::Debug for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tail::Zeros => f.write_str("Zeros"),
            Tail::Ones => f.write_str("Ones"),
            Tail::Periodic(w) => write!(f, "Periodic({})", word_string(w)),
            Tail::Generator { seed, stream } => write!(f, "Generator({seed}, {stream})"),
        }
    }
}

/// Binary expansion `0.x_1 x_2 ...` of a point of `[0, 1]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitStream {
    head: Vec<bool>,
    tail: Tail,
}

impl BitStream {
    /// Panics if a periodic tail has an empty word.
    pub fn new(head: Vec<bool>, tail: Tail) -> Self {
        if let Tail::Periodic(w) = &tail {
            assert!(!w.is_empty(), "periodic tail needs a nonempty word");
        }
        Self { head, tail }
    }

    /// `head` followed by `period` repeated, with constant periods folded
    /// into the `Zeros` / `Ones` tails.
    pub fn periodic(head: Vec<bool>, period: Vec<bool>) -> Result<Self> {
        if period.is_empty() {
            return Err(domain("empty period"));
        }
        let tail = if period.iter().all(|&b| !b) {
            Tail::Zeros
        } else if period.iter().all(|&b| b) {
            Tail::Ones
        } else {
            Tail::Periodic(period)
        };
        Ok(Self { head, tail })
    }

    /// Uniform random expansion, replayable from `(seed, stream)`.
    pub fn random(seed: u64, stream: u64) -> Self {
        Self {
            head: Vec::new(),
            tail: Tail::Generator { seed, stream },
        }
    }

    /// Expansion of a rational in `[0, 1]`: terminating when the denominator
    /// is a power of two, eventually periodic otherwise, all ones for 1.
    pub fn from_rational(r: &BigRational) -> Result<Self> {
        if r.is_negative() || *r > BigRational::one() {
            return Err(domain(format!("{r} is not in [0, 1]")));
        }
        if r.is_one() {
            return Ok(Self::new(Vec::new(), Tail::Ones));
        }
        let den = r.denom().clone();
        let mut rem = r.numer().clone();
        let mut seen: HashMap<BigInt, usize> = HashMap::new();
        let mut digits = Vec::new();
        while !rem.is_zero() {
            if let Some(&start) = seen.get(&rem) {
                let period = digits.split_off(start);
                return Self::periodic(digits, period);
            }
            seen.insert(rem.clone(), digits.len());
            rem <<= 1;
            let bit = rem >= den;
            if bit {
                rem -= &den;
            }
            digits.push(bit);
        }
        Ok(Self::new(digits, Tail::Zeros))
    }

    pub fn head(&self) -> &[bool] {
        &self.head
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    /// The period word for constant or periodic tails.
    pub fn period(&self) -> Option<Vec<bool>> {
        match &self.tail {
            Tail::Zeros => Some(vec![false]),
            Tail::Ones => Some(vec![true]),
            Tail::Periodic(w) => Some(w.clone()),
            Tail::Generator { .. } => None,
        }
    }

    /// True when only zeros follow position `n` (1-based, so `n = 0` means
    /// the whole expansion).
    pub fn zeros_after(&self, n: usize) -> bool {
        self.tail == Tail::Zeros && !self.head.iter().skip(n).any(|&b| b)
    }

    /// The digits `x_1, x_2, ...` as an endless iterator.
    pub fn iter(&self) -> Bits {
        let source = match &self.tail {
            Tail::Zeros => Source::Const(false),
            Tail::Ones => Source::Const(true),
            Tail::Periodic(w) => Source::Periodic(w.clone(), 0),
            Tail::Generator { seed, stream } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                rng.set_stream(*stream);
                Source::Random {
                    rng: Box::new(rng),
                    buf: 0,
                    left: 0,
                }
            }
        };
        Bits {
            head: self.head.clone(),
            pos: 0,
            source,
        }
    }

    /// First `n` digits.
    pub fn prefix(&self, n: usize) -> Vec<bool> {
        self.iter().take(n).collect()
    }
}

impl fmt::Debug for BitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0.{} {:?}", word_string(&self.head), self.tail)
    }
}

pub(crate) fn word_string(w: &[bool]) -> String {
    w.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

enum Source {
    Const(bool),
    Periodic(Vec<bool>, usize),
    Random {
        rng: Box<ChaCha8Rng>,
        buf: u64,
        left: u32,
    },
}

/// Endless digit iterator over a [`BitStream`].
pub struct Bits {
    head: Vec<bool>,
    pos: usize,
    source: Source,
}

impl Iterator for Bits {
    type Item = bool;

    fn next(&mut self) -> Option<bool> {
        if self.pos < self.head.len() {
            self.pos += 1;
            return Some(self.head[self.pos - 1]);
        }
        Some(match &mut self.source {
            Source::Const(b) => *b,
            Source::Periodic(w, i) => {
                let b = w[*i];
                *i = (*i + 1) % w.len();
                b
            }
            Source::Random { rng, buf, left } => {
                if *left == 0 {
                    *buf = rng.next_u64();
                    *left = 64;
                }
                let b = *buf & 1 == 1;
                *buf >>= 1;
                *left -= 1;
                b
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    fn w(s: &str) -> Vec<bool> {
        s.bytes().map(|b| b == b'1').collect()
    }

    #[test]
    fn rational_expansions() {
        assert_eq!(
            BitStream::from_rational(&ratio(1, 3)).unwrap(),
            BitStream::new(vec![], Tail::Periodic(w("01")))
        );
        assert_eq!(
            BitStream::from_rational(&ratio(3, 4)).unwrap(),
            BitStream::new(w("11"), Tail::Zeros)
        );
        assert_eq!(
            BitStream::from_rational(&ratio(1, 1)).unwrap(),
            BitStream::new(vec![], Tail::Ones)
        );
        // 1/6 = 0.0010101...
        assert_eq!(
            BitStream::from_rational(&ratio(1, 6)).unwrap(),
            BitStream::new(w("0"), Tail::Periodic(w("01")))
        );
        assert!(BitStream::from_rational(&ratio(4, 3)).is_err());
        assert!(BitStream::from_rational(&ratio(-1, 3)).is_err());
    }

    #[test]
    fn constant_periods_fold() {
        assert_eq!(
            BitStream::periodic(w("1"), w("000")).unwrap().tail(),
            &Tail::Zeros
        );
        assert_eq!(
            BitStream::periodic(w(""), w("11")).unwrap().tail(),
            &Tail::Ones
        );
        assert!(BitStream::periodic(w(""), w("")).is_err());
    }

    #[test]
    fn iteration() {
        let s = BitStream::new(w("110"), Tail::Periodic(w("01")));
        assert_eq!(s.prefix(8), w("11001010"));
        let z = BitStream::new(w("1"), Tail::Zeros);
        assert_eq!(z.prefix(3), w("100"));
        assert!(z.zeros_after(1));
        assert!(!z.zeros_after(0));
    }

    #[test]
    fn generator_replays() {
        let s = BitStream::random(7, 3);
        let a = s.prefix(500);
        assert_eq!(a, s.clone().prefix(500));
        assert_ne!(a, BitStream::random(7, 4).prefix(500));
        let ones = a.iter().filter(|&&b| b).count();
        assert!((200..300).contains(&ones));
    }
}
