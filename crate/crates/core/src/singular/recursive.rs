use std::collections::HashMap;

use crate::quadratic::{alpha, Dyadic, QSqrt5};

/// Evaluates `F` at dyadic rationals using only the three functional
/// equations
///
/// ```text
/// F(x) = α F(2x)                                   0   <= x < 1/2
/// F(x) = 3 F(x - 1/2) + α                          1/2 <= x < 3/4
/// F(x) = F(x - 1/2) + 2 F(x - 3/4) + α + 2α²       3/4 <= x <= 1
/// ```
///
/// and `F(0) = 0`. The first branch lowers the depth of `x` by one and the
/// other two land in `[0, 1/2]`, so the recursion ends after at most
/// `2 depth(x) + 2` levels. Values are memoized per evaluator.
#[derive(Debug, Default)]
pub struct RecursiveEvaluator {
    memo: HashMap<Dyadic, QSqrt5>,
}

impl RecursiveEvaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cached(&self) -> usize {
        self.memo.len()
    }

    pub fn eval(&mut self, x: &Dyadic) -> QSqrt5 {
        if x.is_zero() {
            return QSqrt5::zero();
        }
        if let Some(v) = self.memo.get(x) {
            return v.clone();
        }
        let a = alpha();
        let half = Dyadic::half();
        let three_quarters = Dyadic::new(3u32, 2).unwrap();
        let v = if x.cmp_value(&half).is_lt() {
            &a * &self.eval(&x.double().unwrap())
        } else if x.cmp_value(&three_quarters).is_lt() {
            let y = x.checked_sub(&half).unwrap();
            &(&QSqrt5::from(3) * &self.eval(&y)) + &a
        } else {
            let y = x.checked_sub(&half).unwrap();
            let z = x.checked_sub(&three_quarters).unwrap();
            let constant = &a + &(&QSqrt5::from(2) * &(&a * &a));
            &(&self.eval(&y) + &(&QSqrt5::from(2) * &self.eval(&z))) + &constant
        };
        self.memo.insert(x.clone(), v.clone());
        v
    }
}

/// `F(x)` from the functional equations, with a fresh memo table.
pub fn eval_recursive_dyadic(x: &Dyadic) -> QSqrt5 {
    RecursiveEvaluator::new().eval(x)
}
