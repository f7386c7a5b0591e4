//! Named replays of the worked computations.

use std::fmt::Write as _;

use reidemeister::catalog::{build_g53, build_n_r, DihedralAut, DihedralElement, KleinAut, KleinCase, KleinZnEndo};
use reidemeister::freenilp::{layer_coordinates, lcs_degree, rank2, reid_free_nilpotent, EndoSpec, LcsDegree};
use reidemeister::reidemeister::{
    certify, dihedral_reflection_class, dihedral_twisted_conjugate, family_window, fixed_element_law,
    layer_two_law, reid_central_tower, scan_g53, scan_q42, verify, KleinFamily, Problem, FIXED_ELEMENT_SEED,
    KLEIN_WINDOW, LAYER_TWO_SEED,
};
use reidemeister::{Error, IntMatrix, ReidValue, Result};
use serde_json::{json, Value};

use crate::commands::{free_nilpotent_human, q42_human, to_value, witt, Outcome};
use crate::spec::Params;

pub const TARGETS: &[(&str, &str)] = &[
    ("witt-table", "Witt rank table"),
    ("w-elements", "nontrivial commutators w and w1"),
    ("layer-two-law", "layer-two law"),
    ("fixed-element-law", "fixed element w1"),
    ("klein-bottle", "Klein bottle group"),
    ("dihedral", "infinite dihedral group"),
    ("klein-times-zn", "pi1(K) x Z^n"),
    ("det-one-chain", "determinant-one chain on F_2/G_3"),
    ("example-4.1", "Q42 lifting scan"),
    ("example-4.2", "hyperbolic map on F_2/G_3"),
    ("example-5.1", "N_r towers"),
    ("example-5.2", "G53 abelianization scan"),
    ("example-5.3", "G53 x Z^n certificates"),
];

fn wrap(target: &str, anchor: &str, inner: Outcome) -> Outcome {
    Outcome {
        code: inner.code,
        json: json!({ "target": target, "anchor": anchor, "report": inner.json }),
        human: format!("== {target} [{anchor}] ==\n{}", inner.human),
    }
}

pub fn repro(target: &str, p: &Params) -> Result<Outcome> {
    let anchor = TARGETS
        .iter()
        .find(|(t, _)| *t == target)
        .map(|(_, a)| *a)
        .ok_or_else(|| {
            let names: Vec<&str> = TARGETS.iter().map(|(t, _)| *t).collect();
            Error::Parse(format!("unknown repro target {target:?}; known: {}", names.join(", ")))
        })?;
    let inner = match target {
        "witt-table" => witt(2, 8)?,
        "w-elements" => w_elements()?,
        "layer-two-law" => {
            let r = layer_two_law(p.seed.unwrap_or(LAYER_TWO_SEED), 100, 6)?;
            let h = format!("seed {}: {} endomorphisms, {} failures\n", r.seed, r.count, r.failures);
            Outcome::asserted(r.failures == 0, to_value(&r), h)
        }
        "fixed-element-law" => {
            let r = fixed_element_law(p.seed.unwrap_or(FIXED_ELEMENT_SEED), 20, 12)?;
            let h = format!(
                "seed {}: {} automorphisms with det -1, {} failures; each fixes w1 and has R = infinity\n",
                r.seed, r.count, r.failures
            );
            Outcome::asserted(r.failures == 0, to_value(&r), h)
        }
        "klein-bottle" => klein_bottle()?,
        "dihedral" => dihedral()?,
        "klein-times-zn" => klein_times_zn()?,
        "det-one-chain" => {
            let e = EndoSpec::parse(2, &["x1 x2", "x2"])?;
            let c = certify(&Problem::FreeNilpotent { endo: e, class: 2 })?;
            verify(&c)?;
            Outcome::ok(to_value(&c), c.outline())
        }
        "example-4.1" => {
            let r = scan_q42(p.bound.unwrap_or(1))?;
            let h = q42_human(&r);
            Outcome::asserted(r.passed(), to_value(&r), h)
        }
        "example-4.2" => example_42()?,
        "example-5.1" => example_51()?,
        "example-5.2" => {
            let r = scan_g53(p.b_bound.unwrap_or(10))?;
            let h = format!(
                "{} tuples, R = infinity for all: {}\n",
                r.count, r.all_infinite
            );
            Outcome::asserted(r.all_infinite, to_value(&r), h)
        }
        "example-5.3" => example_53()?,
        _ => unreachable!("target list checked above"),
    };
    Ok(wrap(target, anchor, inner))
}

fn w_elements() -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut h = String::new();
    for (name, w) in [("w = [[B,x],[B,y]]", rank2::w()), ("w1 = [B,w]", rank2::w1())] {
        let deg = lcs_degree(&w, 9)?;
        let LcsDegree::Degree(d) = deg else {
            return Err(Error::Verify(format!("{name} is trivial up to degree 9")));
        };
        let coords = layer_coordinates(&w, d)?;
        let nonzero = coords.iter().filter(|c| c.to_string() != "0").count();
        let _ = writeln!(h, "{name}: lies in G_{d} \\ G_{}, {nonzero} nonzero coordinates", d + 1);
        rows.push(json!({ "element": name, "degree": d, "nonzero_coordinates": nonzero,
            "coordinates": coords.iter().map(ToString::to_string).collect::<Vec<_>>() }));
    }
    Ok(Outcome::ok(json!(rows), h))
}

fn klein_bottle() -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut ok = true;
    let mut h = String::new();
    for case in KleinCase::ALL {
        let mut rules = Vec::new();
        for r in -5..=5 {
            let a = KleinAut::from_case(case, r);
            let c = certify(&Problem::Klein { aut: a })?;
            verify(&c)?;
            let w = family_window(a, KleinFamily::for_case(case), KLEIN_WINDOW.0, KLEIN_WINDOW.1);
            ok &= w.distinct_classes == 41;
            rules.push(c.rule);
            rows.push(json!({ "aut": a, "value": c.claim.value, "rule": c.rule, "window": w }));
        }
        let _ = writeln!(h, "case {}: r in [-5, 5], R = infinity, rule {}", case.letter(), rules[0]);
    }
    Ok(Outcome::asserted(ok, json!(rows), h))
}

fn dihedral() -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut ok = true;
    for n in -5..=5 {
        let a = DihedralAut::new(-1, n)?;
        let mut reps: Vec<i64> = Vec::new();
        for l in -50..=50 {
            let class: Vec<i64> = (-50..=50)
                .filter(|&m| dihedral_twisted_conjugate(a, DihedralElement::new(l, 1), DihedralElement::new(m, 1)))
                .collect();
            let mut expect: Vec<i64> = dihedral_reflection_class(a, l)
                .into_iter()
                .map(|e| e.j)
                .filter(|j| j.abs() <= 50)
                .collect();
            expect.sort();
            ok &= class == expect;
            if !reps.iter().any(|&r| dihedral_twisted_conjugate(a, DihedralElement::new(r, 1), DihedralElement::new(l, 1))) {
                reps.push(l);
            }
        }
        ok &= reps.len() >= 50;
        rows.push(json!({ "sign": -1, "n": n, "classes_in_slice": reps.len() }));
    }
    let h = format!(
        "sign -1, n in [-5, 5]: every reflection class is {{(t^l,1), (t^(n-l),1)}}; {}\n",
        if ok { "confirmed" } else { "MISMATCH" }
    );
    Ok(Outcome::asserted(ok, json!(rows), h))
}

fn klein_times_zn() -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut h = String::new();
    for n in 0..=3 {
        let c = certify(&Problem::KleinTimesZn { endo: KleinZnEndo::identity(n) })?;
        verify(&c)?;
        let _ = writeln!(h, "n = {n}: {:?}", c.rules());
        rows.push(to_value(&c));
    }
    Ok(Outcome::ok(Value::Array(rows), h))
}

fn example_42() -> Result<Outcome> {
    let e = EndoSpec::parse(2, &["x1 x1 x2", "x1 x1 x1 x1 x1 x2 x2"])?;
    let base = reid_free_nilpotent(&e, 2)?;
    let mut h = free_nilpotent_human(&base);
    let mut ok = base.value == ReidValue::finite(8);
    let mut blocks = Vec::new();
    for r in 3..=5 {
        let b = reid_free_nilpotent(&EndoSpec::hyperbolic_block_sum(r)?, 2)?;
        ok &= b.value.is_finite();
        let _ = writeln!(h, "rank {r} block sum: R = {}", b.value);
        blocks.push(to_value(&b));
    }
    Ok(Outcome::asserted(ok, json!({ "rank_two": base, "block_sums": blocks }), h))
}

fn example_51() -> Result<Outcome> {
    let m = IntMatrix::from_rows(&[[2, 5], [1, 2]]);
    let mut rows = Vec::new();
    let mut h = String::new();
    let mut ok = true;
    for r in [1, 2, 3] {
        let t = build_n_r(r)?;
        let rep = reid_central_tower(&t, &t.derive_endo(&m)?)?;
        ok &= rep.value == ReidValue::finite(8);
        let _ = writeln!(h, "N_{r}: R = {} = {} * {}", rep.value, rep.layers[0].value, rep.layers[1].value);
        rows.push(to_value(&rep));
    }
    Ok(Outcome::asserted(ok, json!(rows), h))
}

fn example_53() -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut h = String::new();
    for n in 0..=3usize {
        let t = build_g53().product_with_zn(n);
        let mut count = 0;
        for (a, b, d) in [(1, 0, 1), (-1, 3, -1), (1, 2, -1), (-1, -2, 1)] {
            let size = 2 + n;
            let l1 = IntMatrix::from_fn(size, size, |i, j| {
                let v = match (i, j) {
                    (0, 0) => a,
                    (1, 0) => b,
                    (1, 1) => d,
                    (i, j) if i == j => -1,
                    _ => 0,
                };
                v.into()
            });
            let endo = t.derive_endo(&l1)?;
            let c = certify(&Problem::Tower { tower: t.clone(), endo })?;
            verify(&c)?;
            if c.claim.value != Some(ReidValue::Infinite) {
                return Err(Error::Verify(format!("finite R on G x Z^{n}")));
            }
            count += 1;
        }
        let _ = writeln!(h, "G x Z^{n}: Hirsch length {}, {count} certified automorphisms, R = infinity", t.hirsch_length());
        rows.push(json!({ "n": n, "hirsch_length": t.hirsch_length(), "certified": count }));
    }
    Ok(Outcome::ok(json!(rows), h))
}
