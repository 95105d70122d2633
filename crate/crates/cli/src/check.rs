//! Named invariant suites run by `rule150 check`.

use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::Serialize;

use rule150::analysis::{
    left_quotient, left_quotient_direct, right_quotient, right_quotient_direct, run_ratio,
};
use rule150::counting::{
    cum_decompose, cum_direct_table, cum_pow2, cum_pow2_closed, num_cluster, num_direct_table,
    num_matrix,
};
use rule150::eca::{pattern_cells, Rule};
use rule150::fractal::{boxcount_slope, prefractal, selfsim_check};
use rule150::singular::{
    check_dual_representation, eval_dyadic_exact, eval_fk, eval_fk_simulated, grid_values,
    RecursiveEvaluator,
};
use rule150::{alpha, Dyadic, Error, QSqrt5};

pub const SUITES: [&str; 6] = ["eca", "counting", "singular", "analysis", "fractal", "all"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckCase {
    pub id: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

/// Outcome of one suite; the exit code is 0 exactly when every case passed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub cases: Vec<CheckCase>,
    pub summary: Summary,
    pub exit_code: i32,
}

impl CheckReport {
    fn new(suite: &str, cases: Vec<CheckCase>) -> Self {
        let failed = cases.iter().filter(|c| c.status == Status::Fail).count();
        Self {
            suite: suite.to_string(),
            summary: Summary {
                passed: cases.len() - failed,
                failed,
            },
            exit_code: i32::from(failed > 0),
            cases,
        }
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for c in &self.cases {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            writeln!(s, "{tag} {}: {}", c.id, c.detail).unwrap();
        }
        writeln!(
            s,
            "suite {}: {} passed, {} failed",
            self.suite, self.summary.passed, self.summary.failed
        )
        .unwrap();
        s
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).unwrap();
        s.push('\n');
        s
    }
}

type Outcome = Result<String, String>;

fn case(id: &str, f: impl FnOnce() -> Outcome) -> CheckCase {
    let (status, detail) = match f() {
        Ok(d) => (Status::Pass, d),
        Err(d) => (Status::Fail, d),
    };
    CheckCase {
        id: id.to_string(),
        status,
        detail,
    }
}

fn lib<T>(r: Result<T, Error>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn d(m: u64, i: u32) -> Dyadic {
    Dyadic::new(m, i).unwrap()
}

fn eca_cases() -> Vec<CheckCase> {
    const N: usize = 256;
    let set = pattern_cells(N);
    vec![
        case("eca.symmetry", || {
            for (t, row) in set.rows().iter().enumerate() {
                let t = t as i64;
                ensure((0..=t).all(|i| row.get(i) == row.get(-i)), || {
                    format!("row {t}")
                })?;
            }
            Ok(format!("rows 0..={N} symmetric"))
        }),
        case("eca.support", || {
            for (t, row) in set.rows().iter().enumerate() {
                let t = t as i64;
                ensure(row.support() == Some((-t, t)), || format!("row {t}"))?;
            }
            Ok(format!("row t spans [-t, t] for t <= {N}"))
        }),
        case("eca.even-rows", || {
            for (t, row) in set.rows().iter().enumerate().step_by(2) {
                ensure(row.ones().all(|i| i % 2 == 0), || format!("row {t}"))?;
            }
            Ok("even rows vanish at odd cells".into())
        }),
        case("eca.doubling", || {
            for n in 0..=N / 2 {
                for i in -(n as i64)..=n as i64 {
                    ensure(set.contains(2 * i, 2 * n) == set.contains(i, n), || {
                        format!("n = {n}, i = {i}")
                    })?;
                }
            }
            Ok(format!("T^(2n)_(2i) = T^n_i for n <= {}", N / 2))
        }),
        case("eca.odd-codes", || {
            ensure(
                (1..=255u8).step_by(2).all(|c| Rule::new(c).is_err()),
                || "an odd code was accepted".into(),
            )?;
            Ok("all 128 odd codes rejected".into())
        }),
    ]
}

fn counting_cases() -> Vec<CheckCase> {
    const N: usize = 1024;
    vec![
        case("counting.num-routes", || {
            let direct = num_direct_table(N);
            for (n, v) in direct.iter().enumerate() {
                let big = BigUint::from(n);
                ensure(num_matrix(&big) == *v && num_cluster(&big) == *v, || {
                    format!("n = {n}")
                })?;
            }
            Ok(format!("direct = matrix = cluster for n <= {N}"))
        }),
        case("counting.cum-decompose", || {
            let cum = cum_direct_table(N);
            for m in 1..=N + 1 {
                let v = lib(cum_decompose(&BigUint::from(m)))?;
                ensure(v == cum[m - 1], || format!("m = {m}"))?;
            }
            Ok(format!(
                "cum_decompose(m) = cum_direct(m - 1) for m <= {}",
                N + 1
            ))
        }),
        case("counting.closed-form", || {
            for k in 1..=64 {
                let closed = lib(cum_pow2_closed(k))?;
                let exact = lib(cum_pow2(k))?;
                ensure(
                    closed.is_integer() && closed.floor().to_biguint() == Some(exact),
                    || format!("k = {k}"),
                )?;
            }
            Ok("closed form exact for k <= 64".into())
        }),
    ]
}

fn singular_cases() -> Vec<CheckCase> {
    vec![
        case("singular.evaluators", || {
            let grid = grid_values(8);
            let mut rec = RecursiveEvaluator::new();
            for (m, g) in grid.iter().enumerate() {
                let x = d(m as u64, 8);
                ensure(eval_dyadic_exact(&x) == *g && rec.eval(&x) == *g, || {
                    x.to_string()
                })?;
            }
            Ok("series, grid and recursion agree on depth 8".into())
        }),
        case("singular.monotone", || {
            let grid = grid_values(10);
            ensure(grid.windows(2).all(|w| w[0] < w[1]), || {
                "grid not increasing".into()
            })?;
            Ok("strictly increasing on depth 10".into())
        }),
        case("singular.dual-representation", || {
            for x in Dyadic::grid(8).filter(Dyadic::is_interior) {
                ensure(lib(check_dual_representation(&x))?, || x.to_string())?;
            }
            Ok("both expansions agree on depth 8".into())
        }),
        case("singular.fk", || {
            for k in 1..=8 {
                for x in Dyadic::grid(k).filter(Dyadic::is_interior) {
                    ensure(
                        lib(eval_fk(&x, k))? == lib(eval_fk_simulated(&x, k))?,
                        || format!("{x}, k = {k}"),
                    )?;
                }
            }
            Ok("F_k from counts matches simulation for k <= 8".into())
        }),
    ]
}

fn analysis_cases() -> Vec<CheckCase> {
    vec![
        case("analysis.closed-forms", || {
            for x in [d(1, 1), d(3, 2), d(5, 3), d(11, 4)] {
                let k = x.depth();
                for m in k + 2..=k + 12 {
                    ensure(
                        lib(left_quotient(&x, m))? == lib(left_quotient_direct(&x, m))?
                            && lib(right_quotient(&x, m))? == lib(right_quotient_direct(&x, m))?,
                        || format!("{x}, m = {m}"),
                    )?;
                }
            }
            Ok("closed forms match direct quotients".into())
        }),
        case("analysis.half", || {
            let two_a = &alpha() + &alpha();
            let three = QSqrt5::from(3);
            for m in 3..=40 {
                ensure(
                    lib(right_quotient(&Dyadic::half(), m))? == &three * &two_a.pow(m - 1),
                    || format!("m = {m}"),
                )?;
            }
            Ok("right quotients at 1/2 equal 3 (2α)^(m-1)".into())
        }),
        case("analysis.run-ratios", || {
            let a = alpha();
            let lo = &(&QSqrt5::from(10) * &a) / &QSqrt5::from(3);
            let hi = &(&QSqrt5::from(22) * &a) / &QSqrt5::from(5);
            for l in 2..64 {
                let r = run_ratio(l);
                ensure(lo <= r && r <= hi, || format!("l = {l}"))?;
            }
            Ok("D_l in [10α/3, 22α/5] for l < 64".into())
        }),
    ]
}

fn fractal_cases() -> Vec<CheckCase> {
    vec![
        case("fractal.popcount", || {
            for k in 1..=10 {
                let b = lib(prefractal(k))?;
                ensure(
                    BigUint::from(b.popcount()) == lib(cum_pow2(u64::from(k)))?,
                    || format!("k = {k}"),
                )?;
            }
            Ok("popcount(prefractal(k)) = cum(2^k - 1) for k <= 10".into())
        }),
        case("fractal.self-similar", || {
            for k in 2..=10 {
                ensure(lib(selfsim_check(k))?, || format!("k = {k}"))?;
            }
            Ok("k <= 10".into())
        }),
        case("fractal.slope", || {
            let s = lib(boxcount_slope(8, 24))?;
            ensure((s - 1.694242).abs() < 0.01, || format!("slope {s}"))?;
            Ok(format!("slope(8, 24) = {s}"))
        }),
    ]
}

/// Runs a suite by name; `None` for an unknown name.
pub fn run_suite(name: &str) -> Option<CheckReport> {
    let cases = match name {
        "eca" => eca_cases(),
        "counting" => counting_cases(),
        "singular" => singular_cases(),
        "analysis" => analysis_cases(),
        "fractal" => fractal_cases(),
        "all" => [
            eca_cases(),
            counting_cases(),
            singular_cases(),
            analysis_cases(),
            fractal_cases(),
        ]
        .concat(),
        _ => return None,
    };
    Some(CheckReport::new(name, cases))
}
