use rule150::analysis::{derivative_zero_sample, left_quotient, right_quotient, run_ratio};
use rule150::fractal::{boxcount_slope, prefractal, selfsim_check};
use rule150::{alpha, Dyadic, QSqrt5};

#[test]
fn quotients_at_odd_dyadics() {
    let a = alpha();
    let two_a = &a + &a;
    for (m, i) in [(1u64, 1u32), (3, 2), (5, 3), (13, 5)] {
        let x = Dyadic::new(m, i).unwrap();
        let mut prev = left_quotient(&x, i + 1).unwrap();
        for mm in i + 2..=i + 80 {
            let cur = left_quotient(&x, mm).unwrap();
            assert!(cur > prev, "{x}, m = {mm}");
            prev = cur;
        }
        assert!(prev > QSqrt5::from(1_000_000));
        let r = right_quotient(&x, i + 2).unwrap();
        let r2 = right_quotient(&x, i + 3).unwrap();
        assert_eq!(&r * &two_a, r2);
    }
}

#[test]
fn run_ratios_are_bounded() {
    let a = alpha();
    let lo = &(&QSqrt5::from(10) * &a) / &QSqrt5::from(3);
    let hi = &(&QSqrt5::from(22) * &a) / &QSqrt5::from(5);
    for l in 2..200 {
        let r = run_ratio(l);
        assert!(lo <= r && r <= hi, "l = {l}");
    }
}

#[test]
fn vanishing_fraction_grows_with_depth() {
    let shallow = derivative_zero_sample(1, 100, 100).unwrap();
    let deep = derivative_zero_sample(1, 100, 1000).unwrap();
    assert!(deep.below >= shallow.below);
    assert!(deep.below >= 99, "{deep:?}");
}

#[test]
fn prefractal_popcounts_to_12() {
    for k in 1..=12 {
        let b = prefractal(k).unwrap();
        assert_eq!(
            rule150::counting::cum_pow2(u64::from(k)).unwrap(),
            b.popcount().into()
        );
    }
}

#[test]
fn self_similar_to_12() {
    for k in 2..=12 {
        assert!(selfsim_check(k).unwrap(), "k = {k}");
    }
}

#[test]
fn slope_improves_with_scale() {
    let target = 1.694242;
    let coarse = (boxcount_slope(4, 12).unwrap() - target).abs();
    let fine = (boxcount_slope(16, 32).unwrap() - target).abs();
    assert!(fine < coarse);
}
