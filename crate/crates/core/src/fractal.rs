//! Prefractal bitmaps of the Rule 150 limit set and box-counting slopes.

use std::io::{self, Write};

use num_bigint::BigUint;

use crate::counting::cum_pow2;
use crate::eca::{single_site_seed, Configuration, Rule};
use crate::error::{domain, Error, Result};

/// Largest `k` for which [`prefractal`] builds a bitmap.
pub const MAX_PREFRACTAL_K: u32 = 14;

/// A packed black-and-white image; row 0 is the top.
#[derive(Clone, PartialEq, Eq)]
pub struct Bitmap {
    width: usize,
    height: usize,
    stride: usize,
    words: Vec<u64>,
}

impl std::fmt::Debug for Bitmap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Bitmap({}x{}, {} set)",
            self.width,
            self.height,
            self.popcount()
        )
    }
}

impl Bitmap {
    pub fn new(width: usize, height: usize) -> Self {
        let stride = width.div_ceil(64);
        Self {
            width,
            height,
            stride,
            words: vec![0; stride * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        x < self.width
            && y < self.height
            && self.words[y * self.stride + x / 64] >> (x % 64) & 1 == 1
    }

    pub fn set(&mut self, x: usize, y: usize) {
        assert!(x < self.width && y < self.height);
        self.words[y * self.stride + x / 64] |= 1 << (x % 64);
    }

    pub fn popcount(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// Maximal horizontal runs of set pixels in row `y`, as `(start, len)`.
    pub fn runs(&self, y: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut x = 0;
        while x < self.width {
            if self.get(x, y) {
                let start = x;
                while x < self.width && self.get(x, y) {
                    x += 1;
                }
                out.push((start, x - start));
            } else {
                x += 1;
            }
        }
        out
    }

    /// Plain PBM (`P1`), lines of at most 70 characters.
    pub fn write_pbm_ascii<W: Write>(&self, out: &mut W) -> io::Result<()> {
        writeln!(out, "P1")?;
        writeln!(out, "{} {}", self.width, self.height)?;
        let mut line = String::with_capacity(72);
        for y in 0..self.height {
            for x in 0..self.width {
                line.push(if self.get(x, y) { '1' } else { '0' });
                if line.len() == 70 {
                    writeln!(out, "{line}")?;
                    line.clear();
                }
            }
            if !line.is_empty() {
                writeln!(out, "{line}")?;
                line.clear();
            }
        }
        Ok(())
    }

    /// Raw PBM (`P4`): rows packed most significant bit first, byte aligned.
    pub fn write_pbm_binary<W: Write>(&self, out: &mut W) -> io::Result<()> {
        write!(out, "P4\n{} {}\n", self.width, self.height)?;
        let mut row = vec![0u8; self.width.div_ceil(8)];
        for y in 0..self.height {
            row.fill(0);
            for x in 0..self.width {
                if self.get(x, y) {
                    row[x / 8] |= 0x80 >> (x % 8);
                }
            }
            out.write_all(&row)?;
        }
        Ok(())
    }
}

/// Draws rows `t = 0, 1, ...` of an orbit into a bitmap of width
/// `2 radius + 1`, cell 0 at the center column.
pub fn spacetime_bitmap<'a, I>(rows: I, radius: usize) -> Bitmap
where
    I: ExactSizeIterator<Item = &'a Configuration>,
{
    let mut bmp = Bitmap::new(2 * radius + 1, rows.len());
    for (t, row) in rows.enumerate() {
        for i in row.ones() {
            let x = i + radius as i64;
            assert!(
                x >= 0 && (x as usize) < bmp.width,
                "cell {i} outside radius {radius}"
            );
            bmp.set(x as usize, t);
        }
    }
    bmp
}

fn check_k(k: u32) -> Result<()> {
    if k == 0 {
        return Err(domain("k must be positive"));
    }
    if k > MAX_PREFRACTAL_K {
        return Err(Error::ResourceLimit {
            what: "k",
            value: u64::from(k),
            limit: u64::from(MAX_PREFRACTAL_K),
        });
    }
    Ok(())
}

/// The cells of `S(2^k - 1)`: `2^k` rows of width `2^{k+1} - 1`.
pub fn prefractal(k: u32) -> Result<Bitmap> {
    check_k(k)?;
    let steps = 1usize << k;
    let mut bmp = Bitmap::new(2 * steps - 1, steps);
    for (t, row) in Rule::RULE_150
        .orbit(single_site_seed())
        .take(steps)
        .enumerate()
    {
        for i in row.ones() {
            bmp.set((i + steps as i64 - 1) as usize, t);
        }
    }
    Ok(bmp)
}

/// Whether the even rows and even columns of `prefractal(k)` reproduce
/// `prefractal(k - 1)`.
pub fn selfsim_check(k: u32) -> Result<bool> {
    if k < 2 {
        return Err(domain("selfsim_check needs k >= 2"));
    }
    let fine = prefractal(k)?;
    let coarse = prefractal(k - 1)?;
    let (fc, cc) = ((1usize << k) - 1, (1usize << (k - 1)) - 1);
    for t in 0..coarse.height() {
        for x in 0..coarse.width() {
            // coarse column x is cell x - cc, which sits at fine cell 2 (x - cc)
            let fx = fc + 2 * x - 2 * cc;
            if coarse.get(x, t) != fine.get(fx, 2 * t) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `log2(1 + √5)`, the dimension of the limit set.
pub fn dimension_target() -> f64 {
    (1.0 + 5f64.sqrt()).log2()
}

fn log2_big(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        return (u64::try_from(n).unwrap() as f64).log2();
    }
    let shift = bits - 64;
    let top = u64::try_from(n >> shift as usize).unwrap();
    (top as f64).log2() + shift as f64
}

/// Least-squares slope of `log2 cum(2^j - 1)` against `j` for
/// `j = jmin ..= jmax`, rounded to 6 decimals.
///
/// Each cell of `S(2^j - 1)` stands for one occupied box of side `2^-j`
/// covering the rescaled set, so the slope estimates the box dimension.
pub fn boxcount_slope(jmin: u32, jmax: u32) -> Result<f64> {
    if !(2 <= jmin && jmin < jmax && jmax <= 64) {
        return Err(domain(format!(
            "need 2 <= jmin < jmax <= 64, got [{jmin}, {jmax}]"
        )));
    }
    let pts: Vec<(f64, f64)> = (jmin..=jmax)
        .map(|j| Ok((f64::from(j), log2_big(&cum_pow2(u64::from(j))?))))
        .collect::<Result<_>>()?;
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Ok((sxy / sxx * 1e6).round() / 1e6)
}
