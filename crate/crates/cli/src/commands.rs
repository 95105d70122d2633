//! Subcommand bodies. Each returns the bytes it would print, so output can
//! be compared byte for byte.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::Serialize;

use rule150::analysis::{dyadic_quotient_statistic, left_quotient, right_quotient, Side};
use rule150::counting::{
    cum_decompose_closed, cum_direct_table, cum_fast, num_cluster, num_direct_table, num_matrix,
};
use rule150::eca::{evolve, single_site_seed, Rule};
use rule150::fractal::{boxcount_slope, dimension_target, prefractal, spacetime_bitmap, Bitmap};
use rule150::singular::{eval_dyadic_exact, eval_stream_enclosure, eval_stream_exact, grid_values};
use rule150::{BitStream, Dyadic, Error, QSqrt5, Result};

use crate::xspec::Point;

/// Largest step count accepted by `simulate`.
pub const SIMULATE_LIMIT: usize = 1 << 14;
/// Largest `upto` for the direct counting method.
pub const DIRECT_LIMIT: u64 = 1 << 14;
/// Largest `upto` for the matrix and closed counting methods.
pub const FAST_LIMIT: u64 = 1 << 22;
/// Largest depth accepted by `plot-f`.
pub const PLOT_LIMIT: u32 = 20;
/// Largest `mmax` accepted by `quotients`.
pub const QUOTIENT_LIMIT: u32 = 4096;

fn limit(what: &'static str, value: u64, max: u64) -> Result<()> {
    if value > max {
        return Err(Error::ResourceLimit {
            what,
            value,
            limit: max,
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BitmapFormat {
    /// Plain PBM (`P1`).
    Pbm,
    /// Raw PBM (`P4`).
    PbmBinary,
    /// `t,i` rows, one per set cell.
    Csv,
}

fn write_bitmap(bmp: &Bitmap, radius: i64, format: BitmapFormat) -> Vec<u8> {
    let mut out = Vec::new();
    match format {
        BitmapFormat::Pbm => bmp.write_pbm_ascii(&mut out).unwrap(),
        BitmapFormat::PbmBinary => bmp.write_pbm_binary(&mut out).unwrap(),
        BitmapFormat::Csv => {
            let mut s = String::from("t,i\n");
            for y in 0..bmp.height() {
                for x in 0..bmp.width() {
                    if bmp.get(x, y) {
                        writeln!(s, "{y},{}", x as i64 - radius).unwrap();
                    }
                }
            }
            out = s.into_bytes();
        }
    }
    out
}

/// Rows `0..=steps` of the rule's orbit from the single site seed.
pub fn simulate(rule: u8, steps: usize, format: BitmapFormat) -> Result<Vec<u8>> {
    let rule = Rule::new(rule)?;
    limit("steps", steps as u64, SIMULATE_LIMIT as u64)?;
    let rows = evolve(&single_site_seed(), steps, rule);
    let bmp = spacetime_bitmap(rows.iter(), steps);
    Ok(write_bitmap(&bmp, steps as i64, format))
}

/// The prefractal `S(2^k - 1)` as a bitmap.
pub fn limitset(k: u32, format: BitmapFormat) -> Result<Vec<u8>> {
    let bmp = prefractal(k)?;
    Ok(write_bitmap(&bmp, (1i64 << k) - 1, format))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    Num,
    Cum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMethod {
    Direct,
    Matrix,
    Closed,
}

/// CSV `n,value` for `n = 0 ..= upto`.
pub fn counts(mode: CountMode, upto: u64, method: CountMethod) -> Result<Vec<u8>> {
    let max = match method {
        CountMethod::Direct => DIRECT_LIMIT,
        _ => FAST_LIMIT,
    };
    limit("upto", upto, max)?;
    let values: Vec<BigUint> = match (mode, method) {
        (CountMode::Num, CountMethod::Direct) => num_direct_table(upto as usize),
        (CountMode::Cum, CountMethod::Direct) => cum_direct_table(upto as usize),
        (CountMode::Num, CountMethod::Matrix) => {
            (0..=upto).map(|n| num_matrix(&BigUint::from(n))).collect()
        }
        (CountMode::Num, CountMethod::Closed) => {
            (0..=upto).map(|n| num_cluster(&BigUint::from(n))).collect()
        }
        (CountMode::Cum, CountMethod::Matrix) => (0..=upto)
            .map(|n| cum_fast(n as i64))
            .collect::<Result<_>>()?,
        (CountMode::Cum, CountMethod::Closed) => (0..=upto)
            .map(|n| cum_decompose_closed(&BigUint::from(n + 1)))
            .collect::<Result<_>>()?,
    };
    let mut s = String::from("n,value\n");
    for (n, v) in values.iter().enumerate() {
        writeln!(s, "{n},{v}").unwrap();
    }
    Ok(s.into_bytes())
}

fn triple(v: &QSqrt5) -> String {
    format!("({}, {}, {})", v.p(), v.q(), v.d())
}

fn exact_value(x: &Point) -> Option<QSqrt5> {
    match x {
        Point::Dyadic(d) => Some(eval_dyadic_exact(d)),
        Point::Stream(s) => eval_stream_exact(s),
    }
}

/// `F(x)` to `digits` decimals plus the exact triple, or an enclosure of
/// width at most `eps` when no closed form is available.
pub fn eval(label: &str, x: &Point, digits: usize, eps: &BigRational) -> Result<Vec<u8>> {
    let mut s = format!("x: {label}\n");
    match exact_value(x) {
        Some(v) => {
            writeln!(s, "value: {}", v.to_decimal(digits)).unwrap();
            writeln!(s, "exact: {}", triple(&v)).unwrap();
        }
        None => {
            let Point::Stream(stream) = x else {
                unreachable!()
            };
            let enc = eval_stream_enclosure(stream, eps)?;
            writeln!(s, "lower: {}", enc.lo.to_decimal(digits)).unwrap();
            writeln!(s, "upper: {}", enc.hi.to_decimal(digits)).unwrap();
            writeln!(s, "depth: {}", enc.depth).unwrap();
        }
    }
    Ok(s.into_bytes())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotFormat {
    Csv,
    Svg,
}

/// `F` at every dyadic of the given depth.
pub fn plot_f(depth: u32, format: PlotFormat) -> Result<Vec<u8>> {
    limit("depth", u64::from(depth), u64::from(PLOT_LIMIT))?;
    let values = grid_values(depth);
    Ok(match format {
        PlotFormat::Csv => {
            let mut s = String::from("x,f\n");
            for (m, v) in values.iter().enumerate() {
                let x = Dyadic::new(m as u64, depth)?;
                let x = QSqrt5::from_rational(&x.to_rational()).to_decimal(depth.max(1) as usize);
                writeln!(s, "{x},{}", v.to_decimal(12)).unwrap();
            }
            s.into_bytes()
        }
        PlotFormat::Svg => plot_svg(depth, &values)?.into_bytes(),
    })
}

/// The graph of `F` over `[0, 1]` drawn on top of the prefractal, whose
/// cells span `[-1, 1] x [0, 1]` in the same frame (time downward).
fn plot_svg(depth: u32, values: &[QSqrt5]) -> Result<String> {
    let k = depth.clamp(1, 12);
    let bmp = prefractal(k)?;
    let cell = 1.0 / (1u64 << k) as f64;
    let mut s = String::new();
    s.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1 0 2 1\" width=\"1000\" height=\"500\" preserveAspectRatio=\"none\">\n");
    s.push_str("<rect x=\"-1\" y=\"0\" width=\"2\" height=\"1\" fill=\"white\"/>\n");
    s.push_str("<g fill=\"#bbbbbb\" shape-rendering=\"crispEdges\">\n");
    for y in 0..bmp.height() {
        for (x0, len) in bmp.runs(y) {
            let left = x0 as f64 * cell - 1.0 + cell / 2.0;
            writeln!(
                s,
                "<rect x=\"{left:.6}\" y=\"{:.6}\" width=\"{:.6}\" height=\"{cell:.6}\"/>",
                y as f64 * cell,
                len as f64 * cell
            )
            .unwrap();
        }
    }
    s.push_str("</g>\n<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" vector-effect=\"non-scaling-stroke\" points=\"");
    let n = values.len() - 1;
    for (m, v) in values.iter().enumerate() {
        if m > 0 {
            s.push(' ');
        }
        write!(s, "{:.6},{:.6}", m as f64 / n as f64, 1.0 - v.to_f64()).unwrap();
    }
    s.push_str("\"/>\n</svg>\n");
    Ok(s)
}

#[derive(Serialize)]
struct DimensionReport {
    jmin: u32,
    jmax: u32,
    slope: f64,
    target: f64,
}

pub fn dimension(jmin: u32, jmax: u32) -> Result<Vec<u8>> {
    let report = DimensionReport {
        jmin,
        jmax,
        slope: boxcount_slope(jmin, jmax)?,
        target: (dimension_target() * 1e6).round() / 1e6,
    };
    let mut out = serde_json::to_vec_pretty(&report).unwrap();
    out.push(b'\n');
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientSide {
    Left,
    Right,
    Both,
    Symmetric,
}

/// One row of the `quotients` report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientRow {
    pub point: String,
    pub side: String,
    pub m: u32,
    pub value_decimal: String,
    pub exact_p: String,
    pub exact_q: String,
    pub exact_d: String,
}

impl QuotientRow {
    fn new(point: &str, side: Side, m: u32, v: &QSqrt5, digits: usize) -> Self {
        Self {
            point: point.to_string(),
            side: side.to_string(),
            m,
            value_decimal: v.to_decimal(digits),
            exact_p: v.p().to_string(),
            exact_q: v.q().to_string(),
            exact_d: v.d().to_string(),
        }
    }
}

/// Difference quotients of `F` at `x` for `m` up to `mmax`.
///
/// Left and right quotients need an interior dyadic `x = m'/2^k` and start
/// at the first admissible `m` (`k + 1` and `k + 2`). The symmetric side
/// uses the depth-`m` bracketing interval and accepts any point.
pub fn quotient_rows(
    label: &str,
    x: &Point,
    mmax: u32,
    side: QuotientSide,
    digits: usize,
) -> Result<Vec<QuotientRow>> {
    limit("mmax", u64::from(mmax), u64::from(QUOTIENT_LIMIT))?;
    let mut rows = Vec::new();
    if side == QuotientSide::Symmetric {
        let stream: BitStream = match x {
            Point::Dyadic(d) => d.bits(),
            Point::Stream(s) => s.clone(),
        };
        for m in 1..=mmax {
            let v = dyadic_quotient_statistic(&stream, m)?;
            rows.push(QuotientRow::new(label, Side::Symmetric, m, &v, digits));
        }
        return Ok(rows);
    }
    let Point::Dyadic(d) = x else {
        return Err(Error::Domain(
            "left and right quotients need a dyadic point".into(),
        ));
    };
    let k = d.depth();
    if matches!(side, QuotientSide::Left | QuotientSide::Both) {
        for m in k + 1..=mmax {
            rows.push(QuotientRow::new(
                label,
                Side::Left,
                m,
                &left_quotient(d, m)?,
                digits,
            ));
        }
    }
    if matches!(side, QuotientSide::Right | QuotientSide::Both) {
        for m in k + 2..=mmax {
            rows.push(QuotientRow::new(
                label,
                Side::Right,
                m,
                &right_quotient(d, m)?,
                digits,
            ));
        }
    }
    if rows.is_empty() {
        left_quotient(d, k + 1)?;
    }
    Ok(rows)
}

pub fn quotients(
    label: &str,
    x: &Point,
    mmax: u32,
    side: QuotientSide,
    digits: usize,
) -> Result<Vec<u8>> {
    let rows = quotient_rows(label, x, mmax, side, digits)?;
    let mut out = serde_json::to_vec_pretty(&rows).unwrap();
    out.push(b'\n');
    Ok(out)
}
