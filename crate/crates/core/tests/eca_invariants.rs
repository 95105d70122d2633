use rule150::counting::num_direct;
use rule150::eca::{evolve, pattern_cells, single_site_seed, Configuration, Rule};
use rule150::Error;

#[test]
fn rows_are_symmetric() {
    let set = pattern_cells(512);
    for (t, row) in set.rows().iter().enumerate() {
        let t = t as i64;
        for i in 0..=t {
            assert_eq!(row.get(i), row.get(-i), "t = {t}, i = {i}");
        }
    }
}

#[test]
fn support_is_the_light_cone() {
    let set = pattern_cells(512);
    for (t, row) in set.rows().iter().enumerate() {
        let t = t as i64;
        assert_eq!(row.support(), Some((-t, t)));
    }
}

#[test]
fn even_rows_vanish_at_odd_cells() {
    let set = pattern_cells(512);
    for (t, row) in set.rows().iter().enumerate().step_by(2) {
        assert!(row.ones().all(|i| i % 2 == 0), "t = {t}");
    }
}

#[test]
fn doubling_relation() {
    // T^{2n}_{2i} = T^n_i
    let set = pattern_cells(512);
    for n in 0..=256usize {
        let n_i = n as i64;
        for i in -n_i..=n_i {
            assert_eq!(
                set.contains(2 * i, 2 * n),
                set.contains(i, n),
                "n = {n}, i = {i}"
            );
        }
    }
}

#[test]
fn row_counts_match_num() {
    let set = pattern_cells(300);
    for (t, row) in set.rows().iter().enumerate() {
        assert_eq!(
            row.count_ones(),
            u64::try_from(&num_direct(t as i64).unwrap()).unwrap()
        );
    }
}

#[test]
fn rule_90_gives_pascal_mod_2() {
    let rows = evolve(&single_site_seed(), 64, Rule::RULE_90);
    for (t, row) in rows.iter().enumerate() {
        // number of ones in row t of Pascal's triangle mod 2
        assert_eq!(row.count_ones(), 1u64 << (t as u64).count_ones());
    }
}

#[test]
fn odd_codes_rejected() {
    for code in (1..=255u8).step_by(2) {
        assert_eq!(Rule::new(code), Err(Error::OddCode(code)));
    }
    assert!(Rule::new(150).is_ok());
}

#[test]
fn empty_configuration_is_fixed() {
    for code in (0..=254u8).step_by(2) {
        let r = Rule::new(code).unwrap();
        assert!(r.step(&Configuration::empty()).is_empty());
    }
}
