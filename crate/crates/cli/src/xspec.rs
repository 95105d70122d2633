//! Parsing of point and tolerance arguments.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rule150::{BitStream, Dyadic, Error, Result, Tail};

/// A point of `[0, 1]` named on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point {
    Dyadic(Dyadic),
    Stream(BitStream),
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_word(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(parse_err(format!("bad binary digit {c:?}"))),
        })
        .collect()
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.trim()
        .parse()
        .map_err(|_| parse_err(format!("not an integer: {s:?}")))
}

/// Accepts `m/2^i`, `p/q`, `bits=<word>`, `bits=<word>(<period>)`, and
/// `random=<seed>`.
pub fn parse_point(spec: &str) -> Result<Point> {
    let spec = spec.trim();
    if let Some(seed) = spec.strip_prefix("random=") {
        let seed: u64 = seed
            .parse()
            .map_err(|_| parse_err(format!("bad seed {seed:?}")))?;
        return Ok(Point::Stream(BitStream::random(seed, 0)));
    }
    if let Some(body) = spec.strip_prefix("bits=") {
        let (head, period) = match body.split_once('(') {
            Some((h, rest)) => {
                let p = rest
                    .strip_suffix(')')
                    .ok_or_else(|| parse_err("missing ')' after period"))?;
                (h, Some(p))
            }
            None => (body, None),
        };
        let head = parse_word(head)?;
        return match period {
            None => Ok(Point::Dyadic(Dyadic::from_digits(&head))),
            Some(p) => {
                let stream = BitStream::periodic(head, parse_word(p)?)?;
                Ok(match stream.tail() {
                    Tail::Zeros => Point::Dyadic(Dyadic::from_digits(stream.head())),
                    _ => Point::Stream(stream),
                })
            }
        };
    }
    let (num, den) = spec.split_once('/').unwrap_or((spec, "1"));
    let num = parse_int(num)?;
    let den = match den.trim().strip_prefix("2^") {
        Some(e) => {
            let e: u32 = e
                .parse()
                .map_err(|_| parse_err(format!("bad exponent {e:?}")))?;
            BigInt::one() << e as usize
        }
        None => parse_int(den)?,
    };
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let r = BigRational::new(num, den);
    if r < BigRational::zero() || r > BigRational::one() {
        return Err(Error::Domain(format!("{spec} is outside [0, 1]")));
    }
    match Dyadic::try_from(&r) {
        Ok(d) => Ok(Point::Dyadic(d)),
        Err(_) => Ok(Point::Stream(BitStream::from_rational(&r)?)),
    }
}

/// A positive rational written as `p/q`, a decimal, or `<mantissa>e<exp>`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let q = parse_int(q)?;
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(BigRational::new(parse_int(p)?, q));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (
            m,
            e.parse::<i32>()
                .map_err(|_| parse_err(format!("bad exponent in {s:?}")))?,
        ),
        None => (s, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(parse_err(format!("not a number: {s:?}")));
    }
    let digits = format!("{int}{frac}");
    let n = parse_int(if digits == "-" { "-0" } else { &digits })?;
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    Ok(if shift >= 0 {
        BigRational::from_integer(n * ten.pow(shift as u32))
    } else {
        BigRational::new(n, ten.pow(shift.unsigned_abs()))
    })
}
