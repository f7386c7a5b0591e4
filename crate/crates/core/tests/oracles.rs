//! Closed-form counts against brute force.

use num_bigint::BigInt;
use proptest::prelude::*;
use reidemeister::catalog::{FinitePcGroup, KleinAut, KleinCase};
use reidemeister::oracle::{conjugacy_classes, klein_ball_agreement, twisted_classes_finite, verify_product_formula};
use reidemeister::reidemeister::reid_fg_abelian;
use reidemeister::{IntMatrix, ReidValue};

#[test]
fn product_formula_violations_need_quotient_fixed_points() {
    let r = verify_product_formula(&[2, 3, 4], 0).unwrap();
    assert!(r.total_violations > 0);
    for m in &r.moduli {
        assert_eq!(m.skipped + m.endomorphisms, m.candidates);
        assert_eq!(m.violations as usize, m.violating.len());
        for t in &m.violating {
            assert!(t.quotient_fix > 1, "m={} {:?}", m.m, t);
            assert!(t.total < t.center * t.quotient, "m={} {:?}", m.m, t);
        }
    }
    let m3 = r.moduli.iter().find(|m| m.m == 3).unwrap();
    assert_eq!((m3.identity.total, m3.identity.center, m3.identity.quotient), (11, 3, 9));
}

#[test]
fn identity_classes_are_conjugacy_classes() {
    for m in 2..=5 {
        let g = FinitePcGroup::heisenberg_mod(m).unwrap();
        let gens: Vec<usize> = (0..g.generators()).map(|i| g.generator(i)).collect();
        let p = twisted_classes_finite(&g, &gens).unwrap();
        assert_eq!(p.class_count, conjugacy_classes(&g));
        // m^2 + m - 1 classes for Heisenberg over Z_m with m prime
        if [2, 3, 5].contains(&m) {
            assert_eq!(p.class_count as u32, m * m + m - 1);
        }
    }
}

#[test]
fn klein_balls_never_contradict() {
    for case in KleinCase::ALL {
        for r in [-3, 0, 2] {
            let a = KleinAut::from_case(case, r);
            let agree = klein_ball_agreement(a, 5);
            assert_eq!(agree.contradictions, 0, "{agree:?}");
            assert!(agree.merged_pairs > 0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn abelian_count_matches_brute_force(
        (m, entries) in (2u32..=6).prop_flat_map(|m| (Just(m), prop::collection::vec(0u32..m, 4)))
    ) {
        let g = FinitePcGroup::abelian(&[m, m]).unwrap();
        let images = [g.index(&[entries[0], entries[1]]), g.index(&[entries[2], entries[3]])];
        let brute = twisted_classes_finite(&g, &images).unwrap().class_count;
        let mat = IntMatrix::from_fn(2, 2, |i, j| BigInt::from(entries[2 * j + i]));
        let rel = IntMatrix::diagonal([BigInt::from(m), BigInt::from(m)]);
        prop_assert_eq!(reid_fg_abelian(&mat, Some(&rel)).unwrap(), ReidValue::finite(brute as u64));
    }
}
