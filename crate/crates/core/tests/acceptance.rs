//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::time::{Duration, Instant};

use reidemeister::catalog::{DihedralAut, DihedralElement, KleinAut, KleinCase, KleinZnEndo};
use reidemeister::freenilp::{layer_coordinates, lcs_degree, rank2, reid_free_nilpotent, witt_rank, EndoSpec, LcsDegree};
use reidemeister::oracle::{klein_ball_agreement, verify_product_formula};
use reidemeister::reidemeister::{
    certify, dihedral_reflection_class, dihedral_twisted_conjugate, family_window, fixed_element_law,
    layer_two_law, reid_dihedral, reid_klein, scan_g53, scan_q42, verify, KleinFamily, Problem, Rule,
    FIXED_ELEMENT_SEED, LAYER_TWO_SEED,
};
use reidemeister::{ReidValue, Result};

const PRODUCT_SEED: u64 = 0;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { pass, detail: detail.into() })
}

fn c1() -> Result<Outcome> {
    let got: Vec<String> = (2..=8).map(|n| witt_rank(2, n).map(|r| r.to_string())).collect::<Result<_>>()?;
    outcome(got == ["1", "2", "3", "6", "9", "18", "30"], format!("ranks {}", got.join(", ")))
}

fn c2() -> Result<Outcome> {
    let mut pass = true;
    let mut parts = Vec::new();
    for (w, want) in [(rank2::w(), 6), (rank2::w1(), 8)] {
        let d = lcs_degree(&w, 9)?;
        let nonzero = match d {
            LcsDegree::Degree(k) => layer_coordinates(&w, k)?.iter().filter(|c| c.to_string() != "0").count(),
            _ => 0,
        };
        pass &= d == LcsDegree::Degree(want) && nonzero > 0;
        parts.push(format!("{d:?} with {nonzero} nonzero coordinates"));
    }
    outcome(pass, parts.join("; "))
}

fn c3() -> Result<Outcome> {
    let r = layer_two_law(LAYER_TWO_SEED, 100, 6)?;
    outcome(r.count == 100 && r.failures == 0, format!("seed {}, {} failures", r.seed, r.failures))
}

fn c4() -> Result<Outcome> {
    let r = fixed_element_law(FIXED_ELEMENT_SEED, 20, 12)?;
    let fixed = r.cases.iter().all(|c| c.fixed && c.value == ReidValue::Infinite);
    outcome(r.count == 20 && r.failures == 0 && fixed, format!("seed {}, {} failures", r.seed, r.failures))
}

fn c5() -> Result<Outcome> {
    let mut pass = true;
    let (mut contradictions, mut short) = (0, 0);
    for case in KleinCase::ALL {
        for r in -5..=5 {
            let a = KleinAut::from_case(case, r);
            let (value, cert) = reid_klein(a)?;
            verify(&cert)?;
            pass &= value == ReidValue::Infinite;
            if family_window(a, KleinFamily::for_case(case), -20, 20).distinct_classes != 41 {
                short += 1;
            }
            contradictions += klein_ball_agreement(a, 6).contradictions;
        }
    }
    pass &= short == 0 && contradictions == 0;
    outcome(pass, format!("44 automorphisms, {short} short windows, {contradictions} ball contradictions"))
}

fn c6() -> Result<Outcome> {
    let mut pass = true;
    let mut min_classes = usize::MAX;
    for n in -5..=5 {
        let a = DihedralAut::new(-1, n)?;
        let (value, _) = reid_dihedral(a)?;
        pass &= value == ReidValue::Infinite;
        let mut reps: Vec<i64> = Vec::new();
        for l in -50..=50i64 {
            let mut class = dihedral_reflection_class(a, l);
            class.sort_by_key(|e| e.j);
            let mut expect = vec![DihedralElement::new(l, 1), DihedralElement::new(n - l, 1)];
            expect.sort_by_key(|e| e.j);
            expect.dedup();
            pass &= class == expect;
            let by_search: Vec<i64> = (-50..=50)
                .filter(|&m| dihedral_twisted_conjugate(a, DihedralElement::new(l, 1), DihedralElement::new(m, 1)))
                .collect();
            let in_slice: Vec<i64> = expect.iter().map(|e| e.j).filter(|j| j.abs() <= 50).collect();
            pass &= by_search == in_slice;
            if !reps.iter().any(|&r| by_search.contains(&r)) {
                reps.push(l);
            }
        }
        min_classes = min_classes.min(reps.len());
    }
    pass &= min_classes >= 50;
    outcome(pass, format!("at least {min_classes} classes per slice"))
}

fn product_report() -> Result<String> {
    Ok(serde_json::to_string(&verify_product_formula(&[2, 3, 4], PRODUCT_SEED)?).expect("json"))
}

fn c7() -> Result<Outcome> {
    let r = verify_product_formula(&[2, 3, 4], PRODUCT_SEED)?;
    let m3 = r.moduli.iter().find(|m| m.m == 3).map(|m| m.identity.total);
    let sampled_enough = r.moduli.iter().filter(|m| m.m != 2).all(|m| m.endomorphisms >= 1000);
    let per: Vec<String> = r
        .moduli
        .iter()
        .map(|m| format!("m={}: {} endomorphisms ({}), {} violations", m.m, m.endomorphisms, m.policy, m.violations))
        .collect();
    outcome(
        r.passed() && m3 == Some(11) && sampled_enough,
        format!("{}; identity count at m=3 is {:?}", per.join("; "), m3),
    )
}

fn c8() -> Result<Outcome> {
    let e = EndoSpec::parse(2, &["x1 x1 x2", "x1 x1 x1 x1 x1 x2 x2"])?;
    let base = reid_free_nilpotent(&e, 2)?;
    let layers: Vec<String> = base.layers.iter().map(|l| l.value.to_string()).collect();
    let mut pass = base.value == ReidValue::finite(8) && layers == ["4", "2"];
    let mut blocks = Vec::new();
    for r in 3..=5 {
        let b = reid_free_nilpotent(&EndoSpec::hyperbolic_block_sum(r)?, 2)?;
        pass &= b.value.is_finite();
        blocks.push(format!("r={r}: {}", b.value));
    }
    outcome(pass, format!("R = {} = {}; {}", base.value, layers.join(" * "), blocks.join(", ")))
}

fn c9() -> Result<Outcome> {
    let r = scan_q42(1)?;
    let checkpoints = r.checkpoints.iter().any(|c| c.det_m_minus_id == 4.into() && c.det_n_minus_id == Some(0.into()))
        && r.checkpoints.iter().any(|c| c.det_m_minus_id == 16.into() && c.det_n_minus_id == Some(0.into()));
    outcome(
        r.lifting_unimodular >= 1 && checkpoints && r.finite_r_counterexamples.is_empty(),
        format!(
            "{} lifting unimodular, {} finite-R cases",
            r.lifting_unimodular,
            r.finite_r_counterexamples.len()
        ),
    )
}

fn c10() -> Result<Outcome> {
    let scan = scan_g53(10)?;
    let mut pass = scan.count == 84 && scan.all_infinite;
    for n in 0..=3 {
        let c = certify(&Problem::KleinTimesZn { endo: KleinZnEndo::identity(n) })?;
        verify(&c)?;
        pass &= c.claim.value == Some(ReidValue::Infinite);
    }
    let e = EndoSpec::parse(2, &["x1 x2", "x2"])?;
    let chain = certify(&Problem::FreeNilpotent { endo: e, class: 2 })?;
    verify(&chain)?;
    let rules = chain.rules();
    pass &= chain.claim.value == Some(ReidValue::Infinite) && rules.contains(&Rule::Product);
    outcome(pass, format!("{} tuples all infinite: {}; det-one chain {:?}", scan.count, scan.all_infinite, rules))
}

fn c11() -> Result<Outcome> {
    let l = |s| -> Result<String> { Ok(serde_json::to_string(&layer_two_law(s, 100, 6)?).expect("json")) };
    let f = |s| -> Result<String> { Ok(serde_json::to_string(&fixed_element_law(s, 20, 12)?).expect("json")) };
    let same = [
        l(LAYER_TWO_SEED)? == l(LAYER_TWO_SEED)?,
        f(FIXED_ELEMENT_SEED)? == f(FIXED_ELEMENT_SEED)?,
        product_report()? == product_report()?,
    ];
    outcome(same.iter().all(|&b| b), format!("layer-two, fixed-element, product identical: {same:?}"))
}

type Criterion = (&'static str, fn() -> Result<Outcome>, Duration);

fn main() {
    let criteria: [Criterion; 11] = [
        ("witt rank table", c1, Duration::from_secs(1)),
        ("nontrivial w and w1", c2, Duration::from_secs(10)),
        ("layer-two law", c3, Duration::MAX),
        ("fixed-element law", c4, Duration::MAX),
        ("Klein bottle group", c5, Duration::MAX),
        ("infinite dihedral group", c6, Duration::MAX),
        ("product formula brute force", c7, Duration::from_secs(120)),
        ("rank-two value and block sums", c8, Duration::MAX),
        ("Q42 exhaustive scan", c9, Duration::from_secs(300)),
        ("G53 scan and certificates", c10, Duration::MAX),
        ("determinism", c11, Duration::MAX),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let (pass, detail) = match result {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let in_time = took <= *limit;
        let pass = pass && in_time;
        if !pass {
            failed += 1;
        }
        let timing = if in_time { String::new() } else { format!(" (over {limit:?})") };
        println!(
            "{} criterion {:>2} {name}: {detail} [{:.2?}]{timing}",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            took
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
