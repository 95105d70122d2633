use num_bigint::BigUint;
use proptest::prelude::*;
use rule150::counting::{
    block_counts, block_counts_closed, cum_decompose, cum_decompose_closed, cum_direct_table,
    cum_fast, cum_pow2, cum_pow2_closed, num_cluster, num_direct_table, num_matrix,
};

/// Counts by stepping a plain vector of cells; shares no code with the library.
fn simulate_num(upto: usize) -> Vec<u64> {
    let width = 2 * upto + 3;
    let mut row = vec![false; width];
    row[upto + 1] = true;
    let mut out = Vec::with_capacity(upto + 1);
    for _ in 0..=upto {
        out.push(row.iter().filter(|&&b| b).count() as u64);
        let mut next = vec![false; width];
        for j in 1..width - 1 {
            next[j] = row[j - 1] ^ row[j] ^ row[j + 1];
        }
        row = next;
    }
    out
}

#[test]
fn first_values() {
    let num: Vec<u64> = [1, 3, 3, 5, 3, 9, 5, 11].to_vec();
    let cum: Vec<u64> = [1, 4, 7, 12, 15, 24, 29, 40].to_vec();
    assert_eq!(simulate_num(7), num);
    let table: Vec<BigUint> = cum.iter().map(|&v| BigUint::from(v)).collect();
    assert_eq!(cum_direct_table(7), table);
    let pow2: Vec<BigUint> = (1..=5).map(|k| cum_pow2(k).unwrap()).collect();
    assert_eq!(pow2, [4u32, 12, 40, 128, 416].map(BigUint::from));
}

#[test]
fn all_routes_agree_up_to_2048() {
    let sim = simulate_num(2048);
    let direct = num_direct_table(2048);
    let mut running = 0u64;
    for n in 0..=2048usize {
        let big = BigUint::from(n);
        let expect = BigUint::from(sim[n]);
        assert_eq!(direct[n], expect, "num_direct({n})");
        assert_eq!(num_matrix(&big), expect, "num_matrix({n})");
        assert_eq!(num_cluster(&big), expect, "num_cluster({n})");
        running += sim[n];
        let m = BigUint::from(n + 1);
        assert_eq!(
            cum_decompose(&m).unwrap(),
            BigUint::from(running),
            "cum_decompose({})",
            n + 1
        );
        assert_eq!(cum_decompose_closed(&m).unwrap(), BigUint::from(running));
        assert_eq!(cum_fast(n as i64).unwrap(), BigUint::from(running));
    }
}

#[test]
fn block_tables_agree() {
    assert_eq!(block_counts(80), block_counts_closed(80));
}

#[test]
fn closed_form_is_integral_to_64() {
    for k in 1..=64 {
        let closed = cum_pow2_closed(k).unwrap();
        assert!(closed.is_integer(), "k = {k}");
        assert_eq!(closed.floor().to_biguint().unwrap(), cum_pow2(k).unwrap());
    }
}

#[test]
fn block_recurrence() {
    // cum(2^{k+1} - 1) = 2 cum(2^k - 1) + 4 cum(2^{k-1} - 1)
    for k in 2..=100 {
        let lhs = cum_pow2(k + 1).unwrap();
        let rhs = cum_pow2(k).unwrap() * 2u32 + cum_pow2(k - 1).unwrap() * 4u32;
        assert_eq!(lhs, rhs);
    }
}

proptest! {
    #[test]
    fn num_of_shifted_index(n in 0u64..1 << 40, s in 0usize..20) {
        // appending zeros to the binary expansion leaves num unchanged
        let n = BigUint::from(n);
        prop_assert_eq!(num_matrix(&(&n << s)), num_matrix(&n));
    }

    #[test]
    fn cum_splits_at_a_power_of_two(k in 1u64..40, low in 0u64..1 << 20) {
        // cum(2^k + r - 1) = cum(2^k - 1) + 3 cum(r - 1) for 0 < r <= 2^{k-1}
        let r = low % (1u64 << (k - 1)) + 1;
        let lhs = cum_decompose(&BigUint::from((1u64 << k) + r)).unwrap();
        let rhs = cum_pow2(k).unwrap() + cum_decompose(&BigUint::from(r)).unwrap() * 3u32;
        prop_assert_eq!(lhs, rhs);
    }
}
