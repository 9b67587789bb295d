use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

use stablerank::finite_rings::{
    e2_decompose, is_stable_row, radical, sl2_lift, stable_rank, um_reduction_surjective, um_rows,
    unit_lift_check, Elementary, ElementaryWord, IntMat2, LiftSource, ZnMat2, ZnRow,
};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

#[test]
fn reduction_of_unimodular_rows_is_onto() {
    for n in 2..=30u64 {
        for d in (2..=n).filter(|d| n % d == 0) {
            for k in 1..=2 {
                let rep = um_reduction_surjective(n, d, k).unwrap();
                assert!(rep.holds, "Um_{k}(Z/{n}) -> Um_{k}(Z/{d}) misses {:?}", rep.first_failure);
            }
        }
    }
}

#[test]
fn stable_rank_agrees_with_the_reduced_ring() {
    for n in 2..=30u64 {
        let rad = radical(n).unwrap();
        assert_eq!(n % rad, 0);
        let (sr_n, sr_rad) = (stable_rank(n).unwrap().stable_rank, stable_rank(rad).unwrap().stable_rank);
        assert_eq!(sr_n, sr_rad, "n = {n}");
        assert_eq!(sr_n, 1);
    }
}

#[test]
fn unimodular_rows_match_a_direct_count() {
    for n in 2..=20u64 {
        let rows = um_rows(n, 2).unwrap();
        let direct = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| gcd(gcd(a, b), n) == 1).count();
        assert_eq!(rows.len(), direct);
        for row in rows {
            let check = is_stable_row(&row).unwrap();
            assert!(check.stable);
            let w = check.witness.unwrap();
            let shortened = (row.entries[0] + w[0] * row.entries[1]) % n;
            assert!(ZnRow::new(n, vec![shortened]).is_unimodular(), "{:?} with {:?}", row, w);
        }
    }
}

#[test]
fn units_lift_from_residues_but_not_from_the_integers() {
    for n in 2..=30u64 {
        for d in (2..=n).filter(|d| n % d == 0) {
            assert!(unit_lift_check(LiftSource::Residues(n), d).unwrap().all_lift);
        }
    }
    for d in [2u64, 3, 4, 6] {
        assert!(unit_lift_check(LiftSource::Integers, d).unwrap().all_lift, "d = {d}");
    }
    let r = unit_lift_check(LiftSource::Integers, 5).unwrap();
    assert!(!r.all_lift && r.first_failure == Some(2));
}

#[test]
fn sl2_order_matches_the_formula() {
    for n in 2..=12u64 {
        let mut order = n * n * n;
        for p in (2..=n).filter(|p| n % p == 0 && (2..*p).all(|d| p % d != 0)) {
            order = order / (p * p) * (p * p - 1);
        }
        assert_eq!(ZnMat2::sl2(n).unwrap().len() as u64, order, "n = {n}");
    }
}

fn word() -> impl Strategy<Value = Vec<(bool, i64)>> {
    proptest::collection::vec((any::<bool>(), -50i64..=50), 0..12)
}

fn compose(w: &[(bool, i64)]) -> IntMat2 {
    w.iter().fold(IntMat2::identity(), |m, &(upper, x)| {
        let e = if upper { Elementary::upper(x) } else { Elementary::lower(x) };
        m.mul(&e.matrix())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn lifts_reduce_back_for_large_moduli(w in word(), n in 2u64..1_000_000) {
        let m = compose(&w).reduce(n);
        prop_assert!(m.is_special());
        let lift = sl2_lift(&m).unwrap();
        prop_assert!(lift.det().is_one());
        prop_assert_eq!(lift.reduce(n), m);
    }

    #[test]
    fn integer_matrices_decompose_exactly(w in word(), minus in any::<bool>()) {
        let mut m = compose(&w);
        if minus {
            m = m.mul(&IntMat2::new(-1, 0, 0, -1));
        }
        let word: ElementaryWord = e2_decompose(&m).unwrap();
        prop_assert_eq!(word.recompose(), m);
        for f in &word.factors {
            prop_assert!(f.i != f.j);
        }
    }

    #[test]
    fn non_special_matrices_are_rejected(a in -20i64..20, b in -20i64..20, c in -20i64..20, d in -20i64..20) {
        let m = IntMat2::new(a, b, c, d);
        prop_assume!(m.det() != BigInt::one());
        prop_assert!(e2_decompose(&m).is_err());
    }
}
