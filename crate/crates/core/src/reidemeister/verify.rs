//! Independent certificate checker. Shares only the leaf operations with
//! the generator.

use std::collections::HashSet;

use serde_json::{json, Value};

use super::certificate::{Certificate, Fact, Premise, PremiseBody, Rule};
use super::leaf::run_leaf;
use crate::error::{Error, Result};
use crate::value::ReidValue;

fn fail<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Verify(msg.into()))
}

fn check_fact(f: &Fact) -> Result<()> {
    let got = run_leaf(&f.leaf_op, &f.leaf_args)
        .map_err(|e| Error::Verify(format!("leaf {} failed on replay: {e}", f.leaf_op)))?;
    if got != f.leaf_result {
        return fail(format!("leaf {} replays to {got}, certificate says {}", f.leaf_op, f.leaf_result));
    }
    Ok(())
}

struct Premises<'a> {
    cert: &'a Certificate,
    used: HashSet<&'a str>,
}

impl<'a> Premises<'a> {
    fn new(cert: &'a Certificate) -> Result<Self> {
        let mut seen = HashSet::new();
        for p in &cert.premises {
            if !seen.insert(p.role.as_str()) {
                return fail(format!("{}: duplicate premise role {:?}", cert.rule, p.role));
            }
        }
        Ok(Premises {
            cert,
            used: HashSet::new(),
        })
    }

    fn get(&mut self, role: &str) -> Result<&'a Premise> {
        let p = self
            .cert
            .premises
            .iter()
            .find(|p| p.role == role)
            .ok_or_else(|| Error::Verify(format!("{}: missing premise {role:?}", self.cert.rule)))?;
        self.used.insert(&p.role);
        Ok(p)
    }

    fn has(&self, role: &str) -> bool {
        self.cert.premises.iter().any(|p| p.role == role)
    }

    fn fact(&mut self, role: &str, ops: &[&str]) -> Result<&'a Fact> {
        let rule = self.cert.rule;
        match &self.get(role)?.body {
            PremiseBody::Fact(f) if ops.contains(&f.leaf_op.as_str()) => Ok(f),
            PremiseBody::Fact(f) => fail(format!("{rule}: premise {role:?} uses leaf {}", f.leaf_op)),
            PremiseBody::Certificate { .. } => fail(format!("{rule}: premise {role:?} must be a fact")),
        }
    }

    fn sub(&mut self, role: &str) -> Result<&'a Certificate> {
        let rule = self.cert.rule;
        match &self.get(role)?.body {
            PremiseBody::Certificate { certificate } => Ok(certificate),
            PremiseBody::Fact(_) => fail(format!("{rule}: premise {role:?} must be a certificate")),
        }
    }

    fn finish(self) -> Result<()> {
        for p in &self.cert.premises {
            if !self.used.contains(p.role.as_str()) {
                return fail(format!("{}: unexpected premise {:?}", self.cert.rule, p.role));
            }
        }
        Ok(())
    }
}

fn about_claim(c: &Certificate, f: &Fact) -> Result<()> {
    if f.leaf_args.get("endo") != Some(&c.claim.endo) {
        return fail(format!("{}: leaf {} is about a different endomorphism", c.rule, f.leaf_op));
    }
    Ok(())
}

fn flag(f: &Fact, path: &[&str]) -> bool {
    let mut v = &f.leaf_result;
    for k in path {
        match v.get(k) {
            Some(x) => v = x,
            None => return false,
        }
    }
    *v == json!(true)
}

fn value(c: &Certificate) -> Result<&ReidValue> {
    c.claim
        .value
        .as_ref()
        .ok_or_else(|| Error::Verify(format!("{}: claim carries no value", c.rule)))
}

fn expect_infinite(c: &Certificate) -> Result<()> {
    if !value(c)?.is_infinite() {
        return fail(format!("{}: the rule only concludes R = infinity", c.rule));
    }
    Ok(())
}

/// The quotient map result must be exactly the endomorphism of the quotient
/// certificate.
fn quotient_matches(map: &Fact, q: &Certificate) -> Result<()> {
    if map.leaf_result != q.claim.endo {
        return fail(format!("quotient certificate is not about the map computed by {}", map.leaf_op));
    }
    Ok(())
}

const INVARIANCE_PAIRS: &[(&str, &str)] = &[
    ("klein_x_subgroup_invariant", "klein_quotient_map"),
    ("dihedral_rotation_invariant", "dihedral_quotient_map"),
    ("klein_zn_center", "klein_zn_quotient_map"),
];

const KERNEL_PAIRS: &[(&str, &str)] = &[("dihedral_rotation_invariant", "dihedral_rotation_map")];

fn invariance_leaf<'a>(c: &'a Certificate, ps: &mut Premises<'a>) -> Result<&'a str> {
    if ps.has("invariant") {
        let ops: Vec<&str> = INVARIANCE_PAIRS.iter().map(|p| p.0).collect();
        let f = ps.fact("invariant", &ops)?;
        about_claim(c, f)?;
        if !flag(f, &["invariant"]) {
            return fail(format!("{}: subgroup is not invariant", c.rule));
        }
        return Ok(&f.leaf_op);
    }
    let sub = ps.sub("invariant_subgroup")?;
    if sub.rule != Rule::CharSubgroup || sub.claim.endo != c.claim.endo {
        return fail(format!("{}: invariant_subgroup must be a subgroup certificate for this endomorphism", c.rule));
    }
    verify(sub)?;
    match sub.premises.iter().find(|p| p.role == "subgroup").map(|p| &p.body) {
        Some(PremiseBody::Fact(f)) => Ok(&f.leaf_op),
        _ => fail("subgroup certificate has no subgroup fact"),
    }
}

fn paired(pairs: &[(&str, &str)], inv: &str, map: &Fact) -> Result<()> {
    if pairs.iter().any(|&(a, b)| a == inv && b == map.leaf_op) {
        Ok(())
    } else {
        fail(format!("map {} does not belong to subgroup leaf {inv}", map.leaf_op))
    }
}

const QUOTIENT_MAPS: &[&str] = &["klein_quotient_map", "dihedral_quotient_map", "klein_zn_quotient_map"];

fn check_quotient_inf(c: &Certificate) -> Result<()> {
    expect_infinite(c)?;
    let mut ps = Premises::new(c)?;
    let inv = invariance_leaf(c, &mut ps)?;
    let map = ps.fact("quotient_map", QUOTIENT_MAPS)?;
    about_claim(c, map)?;
    paired(INVARIANCE_PAIRS, inv, map)?;
    let q = ps.sub("quotient")?;
    quotient_matches(map, q)?;
    verify(q)?;
    if !value(q)?.is_infinite() {
        return fail("QUOTIENT_INF: the quotient has finite R");
    }
    ps.finish()
}

fn check_fix_kernel(c: &Certificate) -> Result<()> {
    expect_infinite(c)?;
    let mut ps = Premises::new(c)?;
    let inv = invariance_leaf(c, &mut ps)?;
    let map = ps.fact("quotient_map", QUOTIENT_MAPS)?;
    about_claim(c, map)?;
    paired(INVARIANCE_PAIRS, inv, map)?;
    let q = ps.sub("quotient")?;
    quotient_matches(map, q)?;
    verify(q)?;
    if value(q)?.is_infinite() {
        return fail("FIX_KERNEL: the quotient must have finite R");
    }
    let fix = ps.fact("quotient_fix", &["fix_finite"])?;
    if fix.leaf_args != q.claim.endo || !flag(fix, &["fix_finite"]) {
        return fail("FIX_KERNEL: Fix of the quotient map is not shown finite");
    }
    let kmap = ps.fact("kernel_map", &["dihedral_rotation_map"])?;
    about_claim(c, kmap)?;
    paired(KERNEL_PAIRS, inv, kmap)?;
    let k = ps.sub("kernel")?;
    quotient_matches(kmap, k)?;
    verify(k)?;
    if !value(k)?.is_infinite() {
        return fail("FIX_KERNEL: the kernel has finite R");
    }
    ps.finish()
}

fn top_layer(c: &Certificate) -> Option<u64> {
    if let Some(class) = c.claim.endo.get("class") {
        return class.as_u64();
    }
    c.claim.endo.get("tower")?.get("layers")?.as_array().map(|l| l.len() as u64)
}

fn check_product(c: &Certificate) -> Result<()> {
    let mut ps = Premises::new(c)?;
    let top = top_layer(c).ok_or_else(|| Error::Verify("PRODUCT: claim is not a nilpotent tower".into()))?;
    let free_nilpotent = c.claim.endo.get("class").is_some();

    // central subgroup: the top layer
    match &ps.get("central_subgroup")?.body {
        PremiseBody::Fact(f) => {
            if f.leaf_op != "tower_validate" || !flag(f, &["top_layer_central"]) {
                return fail("PRODUCT: central_subgroup fact must validate the tower");
            }
            about_claim(c, f)?;
            check_fact(f)?;
        }
        PremiseBody::Certificate { certificate: s } => {
            if s.rule != Rule::CharSubgroup || s.claim.endo != c.claim.endo {
                return fail("PRODUCT: central_subgroup must be a subgroup certificate for this endomorphism");
            }
            verify(s)?;
            let central = s.premises.iter().any(|p| {
                p.role == "central"
                    && matches!(&p.body, PremiseBody::Fact(f) if f.leaf_op == "axiom"
                        && f.leaf_args["statement"] == json!("the last nontrivial lower central term is central"))
            });
            let layer = s.premises.iter().any(|p| {
                p.role == "subgroup"
                    && matches!(&p.body, PremiseBody::Fact(f) if f.leaf_op == "free_nilpotent_layer_basis"
                        && f.leaf_args["layer"] == json!(top))
            });
            if !central || !layer {
                return fail("PRODUCT: subgroup certificate does not show the top layer central");
            }
        }
    }

    let tf = ps.fact("torsion_free", &["axiom", "tower_is_torsion_free"])?;
    let tf_ok = match tf.leaf_op.as_str() {
        "axiom" => {
            free_nilpotent
                && tf.leaf_args["statement"] == json!("free nilpotent groups have torsion-free lower central factors")
        }
        _ => about_claim(c, tf).is_ok() && flag(tf, &["torsion_free"]),
    };
    if !tf_ok {
        return fail("PRODUCT: torsion-freeness not established");
    }

    let (kop, qop) = if free_nilpotent {
        ("free_nilpotent_layer_map", "free_nilpotent_quotient")
    } else {
        ("tower_layer_map", "tower_quotient")
    };
    let kmap = ps.fact("kernel_map", &[kop])?;
    about_claim(c, kmap)?;
    if kmap.leaf_args["layer"] != json!(top) {
        return fail("PRODUCT: kernel map is not on the top layer");
    }
    let k = ps.sub("kernel")?;
    quotient_matches(kmap, k)?;
    verify(k)?;
    let qmap = ps.fact("quotient_map", &[qop])?;
    about_claim(c, qmap)?;
    let q = ps.sub("quotient")?;
    quotient_matches(qmap, q)?;
    verify(q)?;
    let expected = value(k)? * value(q)?;
    if *value(c)? != expected {
        return fail(format!("PRODUCT: claimed {} but factors give {expected}", value(c)?));
    }
    ps.finish()
}

fn check_torsion_quotient(c: &Certificate) -> Result<()> {
    expect_infinite(c)?;
    let mut ps = Premises::new(c)?;
    let map = ps.fact("quotient_map", &["tower_torsion_quotient"])?;
    about_claim(c, map)?;
    let q = ps.sub("quotient")?;
    quotient_matches(map, q)?;
    verify(q)?;
    if !value(q)?.is_infinite() {
        return fail("TORSION_QUOTIENT: the torsion-free quotient has finite R");
    }
    ps.finish()
}

fn check_char_subgroup(c: &Certificate) -> Result<()> {
    if c.claim.value.is_some() || c.claim.statement.is_none() {
        return fail("CHAR_SUBGROUP: claim must be a statement without a value");
    }
    let mut ps = Premises::new(c)?;
    let sub = ps.fact("subgroup", &["klein_zn_center", "free_nilpotent_layer_basis"])?;
    about_claim(c, sub)?;
    let ch = ps.fact("characteristic", &["axiom"])?;
    let statement = ch.leaf_args["statement"].as_str().unwrap_or_default();
    match (sub.leaf_op.as_str(), statement) {
        ("klein_zn_center", "the center of a group is characteristic") => {
            if !flag(sub, &["central"]) {
                return fail("CHAR_SUBGROUP: listed generators are not central");
            }
            let auto = ps.fact("automorphism", &["klein_zn_is_automorphism"])?;
            about_claim(c, auto)?;
            if !flag(auto, &["automorphism"]) {
                return fail("CHAR_SUBGROUP: characteristic subgroups are only invariant under automorphisms");
            }
        }
        ("free_nilpotent_layer_basis", "lower central series terms are fully invariant") => {
            if ps.has("central") {
                let f = ps.fact("central", &["axiom"])?;
                if f.leaf_args["statement"] != json!("the last nontrivial lower central term is central") {
                    return fail("CHAR_SUBGROUP: unexpected centrality axiom");
                }
            }
        }
        _ => return fail(format!("CHAR_SUBGROUP: axiom {statement:?} does not apply to {}", sub.leaf_op)),
    }
    ps.finish()
}

fn check_case_analysis(c: &Certificate) -> Result<()> {
    expect_infinite(c)?;
    let mut ps = Premises::new(c)?;
    let f = ps.fact("classes", &["klein_family_classes", "dihedral_reflection_classes"])?;
    about_claim(c, f)?;
    let ok = match f.leaf_op.as_str() {
        "klein_family_classes" => flag(f, &["analysis", "pairwise_distinct"]),
        _ => flag(f, &["infinite_family"]),
    };
    if !ok {
        return fail("CASE_ANALYSIS: the family does not meet infinitely many classes");
    }
    ps.finish()
}

fn check_abelian_det(c: &Certificate) -> Result<()> {
    let mut ps = Premises::new(c)?;
    let f = ps.fact("abelian", &["reid_fg_abelian"])?;
    if f.leaf_args != c.claim.endo {
        return fail("ABELIAN_DET: leaf is about a different endomorphism");
    }
    let v: ReidValue = serde_json::from_value(f.leaf_result["value"].clone())
        .map_err(|e| Error::Verify(format!("ABELIAN_DET: {e}")))?;
    if v != *value(c)? {
        return fail(format!("ABELIAN_DET: claimed {} but leaf gives {v}", value(c)?));
    }
    ps.finish()
}

/// Checks every rule application and replays every leaf.
pub fn verify(c: &Certificate) -> Result<()> {
    for p in &c.premises {
        if let PremiseBody::Fact(f) = &p.body {
            check_fact(f)?;
        }
    }
    match c.rule {
        Rule::AbelianDet => check_abelian_det(c),
        Rule::QuotientInf => check_quotient_inf(c),
        Rule::FixKernel => check_fix_kernel(c),
        Rule::Product => check_product(c),
        Rule::TorsionQuotient => check_torsion_quotient(c),
        Rule::CharSubgroup => check_char_subgroup(c),
        Rule::CaseAnalysis => check_case_analysis(c),
    }
}

/// Parses and verifies a serialized certificate.
pub fn verify_json(v: &Value) -> Result<Certificate> {
    let c: Certificate =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("certificate: {e}")))?;
    verify(&c)?;
    Ok(c)
}
