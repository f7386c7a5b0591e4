//! Certificate generation.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::certificate::{Certificate, Claim, Fact, Premise, Rule};
use super::klein::KleinFamily;
use super::leaf::{run_leaf, to_json, AbelianDesc, FreeNilpotentDesc, TowerDesc};
use crate::catalog::{CentralTower, DihedralAut, KleinAut, KleinZnEndo, TowerEndo};
use crate::error::{Error, Result};
use crate::exactla::IntMatrix;
use crate::freenilp::EndoSpec;
use crate::value::ReidValue;

/// Window used for case-analysis witnesses on the Klein bottle group.
pub const KLEIN_WINDOW: (i64, i64) = (-20, 20);
/// Window used for reflection classes in `Z ⋊ Z_2`.
pub const DIHEDRAL_WINDOW: (i64, i64) = (-50, 50);

/// A group together with an endomorphism to certify.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Problem {
    Abelian {
        matrix: IntMatrix,
        #[serde(default)]
        relations: Option<IntMatrix>,
    },
    Klein {
        aut: KleinAut,
    },
    Dihedral {
        aut: DihedralAut,
    },
    KleinTimesZn {
        endo: KleinZnEndo,
    },
    FreeNilpotent {
        endo: EndoSpec,
        class: usize,
    },
    Tower {
        tower: CentralTower,
        endo: TowerEndo,
    },
}

fn fact(op: &str, args: Value) -> Result<Fact> {
    let leaf_result = run_leaf(op, &args)?;
    Ok(Fact {
        leaf_op: op.into(),
        leaf_args: args,
        leaf_result,
    })
}

fn claim(group: impl Into<String>, endo: &Value, value: ReidValue) -> Claim {
    Claim {
        group: group.into(),
        endo: endo.clone(),
        value: Some(value),
        statement: None,
    }
}

fn value_of(c: &Certificate) -> ReidValue {
    c.claim.value.clone().expect("value certificates carry a value")
}

fn abelian_group_name(d: &AbelianDesc) -> String {
    let n = d.matrix.rows();
    match &d.relations {
        None => format!("Z^{n}"),
        Some(r) => format!("Z^{n} / <{} relations>", r.cols()),
    }
}

/// Certificate for an endomorphism of a finitely generated abelian group.
pub fn certify_abelian(d: &AbelianDesc) -> Result<Certificate> {
    let args = to_json(d);
    let f = fact("reid_fg_abelian", args.clone())?;
    let value: ReidValue = serde_json::from_value(f.leaf_result["value"].clone())
        .map_err(|e| Error::Verify(format!("leaf value: {e}")))?;
    Ok(Certificate {
        claim: claim(abelian_group_name(d), &args, value),
        rule: Rule::AbelianDet,
        premises: vec![Premise::fact("abelian", f)],
    })
}

fn certify_abelian_value(v: &Value) -> Result<Certificate> {
    let d: AbelianDesc = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    certify_abelian(&d)
}

const KLEIN_GROUP: &str = "pi1(K) = <x, y | x y x y^-1>";
const DIHEDRAL_GROUP: &str = "Z x| Z_2";

pub fn certify_klein(a: KleinAut) -> Result<Certificate> {
    let endo = to_json(&a);
    let wrap = json!({ "endo": endo });
    if a.delta == 1 {
        let invariant = fact("klein_x_subgroup_invariant", wrap.clone())?;
        let qmap = fact("klein_quotient_map", wrap)?;
        let quotient = certify_abelian_value(&qmap.leaf_result)?;
        if !value_of(&quotient).is_infinite() {
            return Err(Error::NoApplicableRule("quotient by <x> has finite R".into()));
        }
        return Ok(Certificate {
            claim: claim(KLEIN_GROUP, &endo, ReidValue::Infinite),
            rule: Rule::QuotientInf,
            premises: vec![
                Premise::fact("invariant", invariant),
                Premise::fact("quotient_map", qmap),
                Premise::cert("quotient", quotient),
            ],
        });
    }
    let family = KleinFamily::for_case(a.case());
    let classes = fact(
        "klein_family_classes",
        json!({ "endo": endo, "family": family.label(), "lo": KLEIN_WINDOW.0, "hi": KLEIN_WINDOW.1 }),
    )?;
    if classes.leaf_result["analysis"]["pairwise_distinct"] != json!(true) {
        return Err(Error::NoApplicableRule(format!("family {} is not pairwise distinct", family.label())));
    }
    Ok(Certificate {
        claim: claim(KLEIN_GROUP, &endo, ReidValue::Infinite),
        rule: Rule::CaseAnalysis,
        premises: vec![Premise::fact("classes", classes)],
    })
}

pub fn certify_dihedral(a: DihedralAut) -> Result<Certificate> {
    let endo = to_json(&a);
    let wrap = json!({ "endo": endo });
    if a.sign == 1 {
        let invariant = fact("dihedral_rotation_invariant", wrap.clone())?;
        let qmap = fact("dihedral_quotient_map", wrap.clone())?;
        let quotient = certify_abelian_value(&qmap.leaf_result)?;
        let qfix = fact("fix_finite", qmap.leaf_result.clone())?;
        let kmap = fact("dihedral_rotation_map", wrap)?;
        let kernel = certify_abelian_value(&kmap.leaf_result)?;
        return Ok(Certificate {
            claim: claim(DIHEDRAL_GROUP, &endo, ReidValue::Infinite),
            rule: Rule::FixKernel,
            premises: vec![
                Premise::fact("invariant", invariant),
                Premise::fact("quotient_map", qmap),
                Premise::cert("quotient", quotient),
                Premise::fact("quotient_fix", qfix),
                Premise::fact("kernel_map", kmap),
                Premise::cert("kernel", kernel),
            ],
        });
    }
    let classes = fact(
        "dihedral_reflection_classes",
        json!({ "endo": endo, "lo": DIHEDRAL_WINDOW.0, "hi": DIHEDRAL_WINDOW.1 }),
    )?;
    Ok(Certificate {
        claim: claim(DIHEDRAL_GROUP, &endo, ReidValue::Infinite),
        rule: Rule::CaseAnalysis,
        premises: vec![Premise::fact("classes", classes)],
    })
}

pub fn certify_klein_zn(e: &KleinZnEndo) -> Result<Certificate> {
    let endo = to_json(e);
    let wrap = json!({ "endo": endo });
    let group = format!("pi1(K) x Z^{}", e.n);
    let auto = fact("klein_zn_is_automorphism", wrap.clone())?;
    if auto.leaf_result["automorphism"] != json!(true) {
        return Err(Error::NoApplicableRule(format!(
            "endomorphism of {group} is not an automorphism; the center need not be invariant"
        )));
    }
    let center = Certificate {
        claim: Claim {
            group: group.clone(),
            endo: endo.clone(),
            value: None,
            statement: Some(format!("the center <y^2> x Z^{} is invariant", e.n)),
        },
        rule: Rule::CharSubgroup,
        premises: vec![
            Premise::fact("subgroup", fact("klein_zn_center", wrap.clone())?),
            Premise::fact(
                "characteristic",
                fact("axiom", json!({ "statement": "the center of a group is characteristic" }))?,
            ),
            Premise::fact("automorphism", auto),
        ],
    };
    let qmap = fact("klein_zn_quotient_map", wrap)?;
    let qa: DihedralAut = serde_json::from_value(qmap.leaf_result.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    let quotient = certify_dihedral(qa)?;
    Ok(Certificate {
        claim: claim(group, &endo, ReidValue::Infinite),
        rule: Rule::QuotientInf,
        premises: vec![
            Premise::cert("invariant_subgroup", center),
            Premise::fact("quotient_map", qmap),
            Premise::cert("quotient", quotient),
        ],
    })
}

fn product(
    group: String,
    endo: &Value,
    central: Premise,
    torsion_free: Fact,
    kmap: Fact,
    qmap: Fact,
    quotient: Certificate,
) -> Result<Certificate> {
    let kernel = certify_abelian_value(&kmap.leaf_result)?;
    let value = &value_of(&kernel) * &value_of(&quotient);
    Ok(Certificate {
        claim: claim(group, endo, value),
        rule: Rule::Product,
        premises: vec![
            central,
            Premise::fact("torsion_free", torsion_free),
            Premise::fact("kernel_map", kmap),
            Premise::cert("kernel", kernel),
            Premise::fact("quotient_map", qmap),
            Premise::cert("quotient", quotient),
        ],
    })
}

pub fn certify_free_nilpotent(e: &EndoSpec, class: usize) -> Result<Certificate> {
    if class == 0 {
        return Err(Error::Domain("class must be at least 1".into()));
    }
    if class == 1 {
        return certify_abelian(&AbelianDesc {
            matrix: e.abelianization(),
            relations: None,
        });
    }
    let desc = FreeNilpotentDesc {
        endo: e.clone(),
        class,
    };
    let endo = to_json(&desc);
    let wrap = json!({ "endo": endo });
    let group = format!("F_{}/G_{}", e.rank(), class + 1);
    let layer_args = json!({ "endo": endo, "layer": class });
    let central = Certificate {
        claim: Claim {
            group: group.clone(),
            endo: endo.clone(),
            value: None,
            statement: Some(format!("G_{class} is a fully invariant central subgroup")),
        },
        rule: Rule::CharSubgroup,
        premises: vec![
            Premise::fact("subgroup", fact("free_nilpotent_layer_basis", layer_args.clone())?),
            Premise::fact(
                "characteristic",
                fact("axiom", json!({ "statement": "lower central series terms are fully invariant" }))?,
            ),
            Premise::fact(
                "central",
                fact("axiom", json!({ "statement": "the last nontrivial lower central term is central" }))?,
            ),
        ],
    };
    let torsion_free = fact(
        "axiom",
        json!({ "statement": "free nilpotent groups have torsion-free lower central factors" }),
    )?;
    let kmap = fact("free_nilpotent_layer_map", layer_args)?;
    let qmap = fact("free_nilpotent_quotient", wrap)?;
    let quotient = certify_free_nilpotent(e, class - 1)?;
    product(
        group,
        &endo,
        Premise::cert("central_subgroup", central),
        torsion_free,
        kmap,
        qmap,
        quotient,
    )
}

fn certify_value(v: &Value) -> Result<Certificate> {
    if v.get("tower").is_some() {
        let d: TowerDesc = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        certify_tower(&d.tower, &d.maps)
    } else {
        certify_abelian_value(v)
    }
}

pub fn certify_tower(t: &CentralTower, e: &TowerEndo) -> Result<Certificate> {
    t.check_endo(e)?;
    if t.class() == 1 {
        return certify_abelian(&AbelianDesc {
            matrix: e.layer_matrices[0].clone(),
            relations: super::leaf::relations_or_none(t.layer(1)),
        });
    }
    let endo = to_json(&TowerDesc {
        tower: t.clone(),
        maps: e.clone(),
    });
    let wrap = json!({ "endo": endo });
    let tf = fact("tower_is_torsion_free", wrap.clone())?;
    if tf.leaf_result["torsion_free"] == json!(true) {
        let central = fact("tower_validate", wrap.clone())?;
        let kmap = fact("tower_layer_map", json!({ "endo": endo, "layer": t.class() }))?;
        let qmap = fact("tower_quotient", wrap)?;
        let quotient = certify_value(&qmap.leaf_result)?;
        return product(
            t.name.clone(),
            &endo,
            Premise::fact("central_subgroup", central),
            tf,
            kmap,
            qmap,
            quotient,
        );
    }
    let qmap = fact("tower_torsion_quotient", wrap)
        .map_err(|err| Error::NoApplicableRule(format!("{}: {err}", t.name)))?;
    let quotient = certify_value(&qmap.leaf_result)?;
    if !value_of(&quotient).is_infinite() {
        return Err(Error::NoApplicableRule(format!(
            "{} has torsion and its torsion-free quotient has finite R",
            t.name
        )));
    }
    Ok(Certificate {
        claim: claim(t.name.clone(), &endo, ReidValue::Infinite),
        rule: Rule::TorsionQuotient,
        premises: vec![Premise::fact("quotient_map", qmap), Premise::cert("quotient", quotient)],
    })
}

/// Builds a certificate, or fails with `NoApplicableRule`.
pub fn certify(p: &Problem) -> Result<Certificate> {
    match p {
        Problem::Abelian { matrix, relations } => certify_abelian(&AbelianDesc {
            matrix: matrix.clone(),
            relations: relations.clone(),
        }),
        Problem::Klein { aut } => certify_klein(*aut),
        Problem::Dihedral { aut } => certify_dihedral(*aut),
        Problem::KleinTimesZn { endo } => certify_klein_zn(&KleinZnEndo::new(endo.n, endo.images.clone())?),
        Problem::FreeNilpotent { endo, class } => certify_free_nilpotent(endo, *class),
        Problem::Tower { tower, endo } => certify_tower(tower, endo),
    }
}

/// `R` of a Klein bottle automorphism with its certificate.
pub fn reid_klein(a: KleinAut) -> Result<(ReidValue, Certificate)> {
    let c = certify_klein(a)?;
    Ok((value_of(&c), c))
}

/// `R` of an automorphism of `Z ⋊ Z_2` with its certificate.
pub fn reid_dihedral(a: DihedralAut) -> Result<(ReidValue, Certificate)> {
    let c = certify_dihedral(a)?;
    Ok((value_of(&c), c))
}
