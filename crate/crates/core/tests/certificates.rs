use reidemeister::catalog::{
    build_g53, build_heisenberg_mod_tower, build_n_r, AbelianLayer, CentralTower, DihedralAut, KleinAut,
    KleinCase, KleinZnElement, KleinZnEndo, TowerEndo,
};
use reidemeister::freenilp::EndoSpec;
use reidemeister::reidemeister::{certify, verify, verify_json, Certificate, PremiseBody, Problem, Rule};
use reidemeister::{Error, IntMatrix, ReidValue};
use serde_json::json;

fn ok(p: &Problem) -> Certificate {
    let c = certify(p).unwrap();
    verify(&c).unwrap();
    let back = serde_json::to_value(&c).unwrap();
    assert_eq!(verify_json(&back).unwrap(), c);
    c
}

fn klein_zn(n: usize, x: (i64, i64), y: (i64, i64)) -> KleinZnEndo {
    let mut images = vec![
        KleinZnElement { m: x.0, k: x.1, z: vec![0; n] },
        KleinZnElement { m: y.0, k: y.1, z: vec![0; n] },
    ];
    for i in 0..n {
        let mut z = vec![0; n];
        z[i] = 1;
        images.push(KleinZnElement { m: 0, k: 0, z });
    }
    KleinZnEndo::new(n, images).unwrap()
}

#[test]
fn abelian_identity_on_z() {
    let c = ok(&Problem::Abelian { matrix: IntMatrix::from_rows(&[[1]]), relations: None });
    assert_eq!(c.rule, Rule::AbelianDet);
    assert_eq!(c.claim.value, Some(ReidValue::Infinite));
}

#[test]
fn klein_cases() {
    for case in KleinCase::ALL {
        for r in -3..=3 {
            let c = ok(&Problem::Klein { aut: KleinAut::from_case(case, r) });
            let expected = match case {
                KleinCase::A | KleinCase::C => Rule::QuotientInf,
                _ => Rule::CaseAnalysis,
            };
            assert_eq!(c.rule, expected);
            assert_eq!(c.claim.value, Some(ReidValue::Infinite));
        }
    }
}

#[test]
fn dihedral_cases() {
    for n in -3..=3 {
        let plus = ok(&Problem::Dihedral { aut: DihedralAut::new(1, n).unwrap() });
        assert_eq!(plus.rule, Rule::FixKernel);
        let minus = ok(&Problem::Dihedral { aut: DihedralAut::new(-1, n).unwrap() });
        assert_eq!(minus.rule, Rule::CaseAnalysis);
    }
}

#[test]
fn klein_times_zn_chain() {
    for n in 0..=3 {
        let c = ok(&Problem::KleinTimesZn { endo: KleinZnEndo::identity(n) });
        assert_eq!(c.rule, Rule::QuotientInf);
        assert_eq!(c.rules()[1], Rule::CharSubgroup);
        let e = klein_zn(n, (-1, 0), (3, 1));
        let c = ok(&Problem::KleinTimesZn { endo: e });
        assert!(c.rules().contains(&Rule::CaseAnalysis));
    }
}

#[test]
fn klein_times_zn_non_automorphism_has_no_rule() {
    let e = klein_zn(1, (1, 0), (0, 3));
    let err = certify(&Problem::KleinTimesZn { endo: e }).unwrap_err();
    assert!(matches!(err, Error::NoApplicableRule(_)));
}

#[test]
fn free_nilpotent_det_one_chain() {
    let e = EndoSpec::parse(2, &["x1 x1 x2", "x1 x2"]).unwrap();
    let c = ok(&Problem::FreeNilpotent { endo: e, class: 2 });
    assert_eq!(c.rule, Rule::Product);
    assert_eq!(c.claim.value, Some(ReidValue::Infinite));
    assert_eq!(c.rules(), vec![Rule::Product, Rule::CharSubgroup, Rule::AbelianDet, Rule::AbelianDet]);
}

#[test]
fn free_nilpotent_finite_value() {
    let e = EndoSpec::parse(2, &["x1 x1 x2", "x1 x1 x1 x1 x1 x2 x2"]).unwrap();
    let c = ok(&Problem::FreeNilpotent { endo: e.clone(), class: 2 });
    assert_eq!(c.claim.value, Some(ReidValue::finite(8)));
    // layer 3 carries det(M) M = -M, and |det(I + M)| = 4
    let c3 = ok(&Problem::FreeNilpotent { endo: e, class: 3 });
    assert_eq!(c3.claim.value, Some(ReidValue::finite(8 * 4)));
}

#[test]
fn towers() {
    let t = build_n_r(2).unwrap();
    let e = t.derive_endo(&IntMatrix::from_rows(&[[2, 5], [1, 2]])).unwrap();
    let c = ok(&Problem::Tower { tower: t, endo: e });
    assert_eq!(c.claim.value, Some(ReidValue::finite(8)));

    let g = build_g53();
    let e = g.derive_endo(&IntMatrix::from_rows(&[[1, 0], [4, -1]])).unwrap();
    let c = ok(&Problem::Tower { tower: g, endo: e });
    assert_eq!(c.claim.value, Some(ReidValue::Infinite));
}

#[test]
fn finite_tower_has_no_rule() {
    let t = build_heisenberg_mod_tower(3).unwrap();
    let e = t.derive_endo(&IntMatrix::identity(2)).unwrap();
    assert!(matches!(certify(&Problem::Tower { tower: t, endo: e }), Err(Error::NoApplicableRule(_))));
}

#[test]
fn mixed_tower_uses_torsion_quotient() {
    let t = CentralTower::new(
        "Z x Z_2",
        vec![AbelianLayer { free_rank: 1, torsion: vec![2], names: vec![] }],
        vec![],
    )
    .unwrap();
    let e = TowerEndo { layer_matrices: vec![IntMatrix::identity(2)] };
    // class 1 goes straight to the abelian formula
    let c = ok(&Problem::Tower { tower: t, endo: e });
    assert_eq!(c.rule, Rule::AbelianDet);
}

fn tamper(c: &Certificate, f: impl FnOnce(&mut serde_json::Value)) -> Result<Certificate, Error> {
    let mut v = serde_json::to_value(c).unwrap();
    f(&mut v);
    verify_json(&v)
}

#[test]
fn tampering_is_detected() {
    let e = EndoSpec::parse(2, &["x1 x1 x2", "x1 x1 x1 x1 x1 x2 x2"]).unwrap();
    let c = certify(&Problem::FreeNilpotent { endo: e, class: 2 }).unwrap();
    assert!(tamper(&c, |v| v["claim"]["value"] = json!("9")).is_err());
    assert!(tamper(&c, |v| v["premises"][2]["leaf_result"]["matrix"] = json!([["1"]])).is_err());
    assert!(tamper(&c, |v| {
        v["premises"].as_array_mut().unwrap().remove(1);
    })
    .is_err());
    assert!(tamper(&c, |v| v["rule"] = json!("QUOTIENT_INF")).is_err());

    let k = certify(&Problem::Klein { aut: KleinAut::from_case(KleinCase::B, 2) }).unwrap();
    assert!(tamper(&k, |v| v["premises"][0]["leaf_args"]["endo"]["r"] = json!(3)).is_err());
    assert!(tamper(&k, |v| v["claim"]["value"] = json!("4")).is_err());
}

#[test]
fn quotient_inf_rejects_finite_quotient() {
    let k = certify(&Problem::Klein { aut: KleinAut::from_case(KleinCase::A, 1) }).unwrap();
    // swap in a case-c quotient certificate claiming a different map
    let mut bad = k.clone();
    if let PremiseBody::Certificate { certificate } = &mut bad.premises[2].body {
        certificate.claim.value = Some(ReidValue::finite(2));
    }
    assert!(verify(&bad).is_err());
}

#[test]
fn unknown_axiom_is_rejected() {
    let e = EndoSpec::parse(2, &["x1 x2", "x2"]).unwrap();
    let c = certify(&Problem::FreeNilpotent { endo: e, class: 2 }).unwrap();
    assert!(tamper(&c, |v| v["premises"][1]["leaf_args"]["statement"] = json!("everything is torsion-free")).is_err());
}
