//! Leaf operations: the only computations shared by certificate generation
//! and verification. Each takes and returns JSON so facts can be re-run from
//! a serialized certificate.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::abelian::{fix_finite, reid_fg_abelian};
use super::klein::{analyze_family, dihedral_twisted_conjugate, family_window, KleinFamily};
use crate::catalog::{
    AbelianLayer, BracketRule, CentralTower, DihedralAut, DihedralElement, KleinAut, KleinZnElement,
    KleinZnEndo, TowerEndo,
};
use crate::error::{Error, Result};
use crate::exactla::IntMatrix;
use crate::freenilp::{induced_layer_matrix, EndoSpec, LyndonBasis};

/// Statements accepted without computation.
pub const AXIOMS: &[&str] = &[
    "the center of a group is characteristic",
    "lower central series terms are fully invariant",
    "the last nontrivial lower central term is central",
    "free nilpotent groups have torsion-free lower central factors",
];

/// Endomorphism of `Z^n / <relations>`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelianDesc {
    pub matrix: IntMatrix,
    #[serde(default)]
    pub relations: Option<IntMatrix>,
}

/// Endomorphism of `F_r / Gamma_{class+1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreeNilpotentDesc {
    pub endo: EndoSpec,
    pub class: usize,
}

/// Endomorphism of a central tower.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerDesc {
    pub tower: CentralTower,
    pub maps: TowerEndo,
}

fn parse<T: DeserializeOwned>(v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("leaf arguments: {e}")))
}

fn field<T: DeserializeOwned>(args: &Value, name: &str) -> Result<T> {
    let v = args
        .get(name)
        .ok_or_else(|| Error::Parse(format!("leaf arguments lack {name:?}")))?;
    parse(v)
}

pub fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("values serialize")
}

pub(crate) fn relations_or_none(layer: &AbelianLayer) -> Option<IntMatrix> {
    (!layer.torsion.is_empty()).then(|| layer.relations())
}

/// Quotient by the top layer, or the abelian descriptor once one layer is
/// left.
pub(crate) fn tower_quotient_value(d: &TowerDesc) -> Result<Value> {
    let c = d.tower.class();
    if c < 2 {
        return Err(Error::Precondition("a class-1 tower has no proper central quotient".into()));
    }
    if c == 2 {
        return Ok(to_json(&AbelianDesc {
            matrix: d.maps.layer_matrices[0].clone(),
            relations: relations_or_none(d.tower.layer(1)),
        }));
    }
    let layers = d.tower.layers[..c - 1].to_vec();
    let brackets = d
        .tower
        .brackets
        .iter()
        .filter(|b| b.left.layer + b.right.layer < c && b.left.layer < c && b.right.layer < c)
        .cloned()
        .collect();
    let tower = CentralTower::new(format!("{} / L{c}", d.tower.name), layers, brackets)?;
    Ok(to_json(&TowerDesc {
        tower,
        maps: TowerEndo {
            layer_matrices: d.maps.layer_matrices[..c - 1].to_vec(),
        },
    }))
}

/// Quotient by the torsion subgroup: keep the free part of every layer.
pub(crate) fn tower_torsion_quotient_value(d: &TowerDesc) -> Result<Value> {
    let t = &d.tower;
    let mut keep = t.class();
    while keep > 0 && t.layer(keep).free_rank == 0 {
        keep -= 1;
    }
    if keep == 0 {
        return Err(Error::Precondition(format!("{} is finite", t.name)));
    }
    for b in &t.brackets {
        let involves_torsion = b.left.index >= t.layer(b.left.layer).free_rank
            || b.right.index >= t.layer(b.right.layer).free_rank;
        let free_target = t.layer(b.left.layer + b.right.layer).free_rank;
        if involves_torsion && b.value[..free_target].iter().any(|&x| x != 0) {
            return Err(Error::Precondition(format!(
                "bracket [{}, {}] of a torsion generator has a free component",
                t.generator_name(b.left),
                t.generator_name(b.right)
            )));
        }
    }
    let free_block = |n: usize| {
        let f = t.layer(n).free_rank;
        let m = &d.maps.layer_matrices[n - 1];
        IntMatrix::from_fn(f, f, |i, j| m.get(i, j).clone())
    };
    if keep == 1 {
        return Ok(to_json(&AbelianDesc {
            matrix: free_block(1),
            relations: None,
        }));
    }
    let layers = (1..=keep)
        .map(|n| {
            let l = t.layer(n);
            AbelianLayer {
                free_rank: l.free_rank,
                torsion: Vec::new(),
                names: l.names.iter().take(l.free_rank).cloned().collect(),
            }
        })
        .collect();
    let brackets = t
        .brackets
        .iter()
        .filter(|b| {
            let target = b.left.layer + b.right.layer;
            target <= keep
                && b.left.index < t.layer(b.left.layer).free_rank
                && b.right.index < t.layer(b.right.layer).free_rank
        })
        .map(|b| BracketRule {
            left: b.left,
            right: b.right,
            value: b.value[..t.layer(b.left.layer + b.right.layer).free_rank].to_vec(),
        })
        .filter(|b| b.value.iter().any(|&x| x != 0))
        .collect();
    let tower = CentralTower::new(format!("{} / torsion", t.name), layers, brackets)?;
    let maps = TowerEndo {
        layer_matrices: (1..=keep).map(free_block).collect(),
    };
    tower.check_endo(&maps)?;
    Ok(to_json(&TowerDesc { tower, maps }))
}

fn klein_zn_center(n: usize) -> Value {
    let id = KleinZnEndo::identity(n);
    let gens = &id.images;
    let y2 = gens[1].pow(2);
    let mut central = vec![y2];
    central.extend(gens[2..].iter().cloned());
    let commutes = |a: &KleinZnElement, b: &KleinZnElement| a.mul(b) == b.mul(a);
    let all_central = central.iter().all(|c| gens.iter().all(|g| commutes(c, g)));
    let xy_noncentral = !commutes(&gens[0], &gens[1]);
    let mut names = vec!["y^2".to_string()];
    names.extend((1..=n).map(|i| format!("z{i}")));
    json!({
        "generators": names,
        "central": all_central,
        "quotient": "Z x| Z_2 generated by the images of x and y",
        "x_y_noncentral": xy_noncentral,
    })
}

fn dihedral_reflection_classes(a: DihedralAut, lo: i64, hi: i64) -> Value {
    // class of (t^l, 1): c s = h - (-1)^e l + (-1)^1 e n with c = 1 + sign
    let c = 1 + a.sign;
    let members: Vec<DihedralElement> = (lo..=hi).map(|l| DihedralElement::new(l, 1)).collect();
    let mut reps: Vec<DihedralElement> = Vec::new();
    let mut max_class = 0usize;
    for &g in &members {
        let size = members.iter().filter(|&&h| dihedral_twisted_conjugate(a, g, h)).count();
        max_class = max_class.max(size);
        if !reps.iter().any(|&r| dihedral_twisted_conjugate(a, r, g)) {
            reps.push(g);
        }
    }
    json!({
        "m_coefficient": c,
        "class_of_reflection": if c == 0 { "{(t^l,1), (t^(n-l),1)}" } else { "all (t^l,1) with l of fixed parity" },
        "infinite_family": c == 0,
        "window": { "lo": lo, "hi": hi, "max_class_size": max_class, "distinct_classes": reps.len() },
    })
}

/// Runs a named leaf operation.
pub fn run_leaf(op: &str, args: &Value) -> Result<Value> {
    match op {
        "axiom" => {
            let st: String = field(args, "statement")?;
            if AXIOMS.contains(&st.as_str()) {
                Ok(json!({ "accepted": true }))
            } else {
                Err(Error::Verify(format!("unknown axiom {st:?}")))
            }
        }
        "reid_fg_abelian" => {
            let d: AbelianDesc = parse(args)?;
            Ok(json!({ "value": reid_fg_abelian(&d.matrix, d.relations.as_ref())? }))
        }
        "fix_finite" => {
            let d: AbelianDesc = parse(args)?;
            Ok(json!({ "fix_finite": fix_finite(&d.matrix, d.relations.as_ref())? }))
        }
        "klein_x_subgroup_invariant" => {
            let a: KleinAut = field(args, "endo")?;
            Ok(json!({ "invariant": a.apply(crate::catalog::KleinElement::X).k == 0 }))
        }
        "klein_quotient_map" => {
            let a: KleinAut = field(args, "endo")?;
            Ok(to_json(&AbelianDesc {
                matrix: IntMatrix::from_rows(&[[a.delta]]),
                relations: None,
            }))
        }
        "klein_family_classes" => {
            let a: KleinAut = field(args, "endo")?;
            let family: String = field(args, "family")?;
            let family = KleinFamily::from_label(&family)
                .ok_or_else(|| Error::Parse(format!("unknown family {family:?}")))?;
            let lo: i64 = field(args, "lo")?;
            let hi: i64 = field(args, "hi")?;
            Ok(json!({
                "analysis": analyze_family(a, family),
                "window": family_window(a, family, lo, hi),
            }))
        }
        "dihedral_rotation_invariant" => {
            let a: DihedralAut = field(args, "endo")?;
            Ok(json!({ "invariant": a.apply(DihedralElement::new(1, 0)).eps == 0 }))
        }
        "dihedral_rotation_map" => {
            let a: DihedralAut = field(args, "endo")?;
            Ok(to_json(&AbelianDesc {
                matrix: IntMatrix::from_rows(&[[a.sign]]),
                relations: None,
            }))
        }
        "dihedral_quotient_map" => {
            let _: DihedralAut = field(args, "endo")?;
            Ok(to_json(&AbelianDesc {
                matrix: IntMatrix::from_rows(&[[1]]),
                relations: Some(IntMatrix::from_rows(&[[2]])),
            }))
        }
        "dihedral_reflection_classes" => {
            let a: DihedralAut = field(args, "endo")?;
            let lo: i64 = field(args, "lo")?;
            let hi: i64 = field(args, "hi")?;
            Ok(dihedral_reflection_classes(a, lo, hi))
        }
        "klein_zn_center" => {
            let e: KleinZnEndo = field(args, "endo")?;
            Ok(klein_zn_center(e.n))
        }
        "klein_zn_is_automorphism" => {
            let e: KleinZnEndo = field(args, "endo")?;
            Ok(json!({ "automorphism": KleinZnEndo::new(e.n, e.images.clone())?.is_automorphism() }))
        }
        "klein_zn_quotient_map" => {
            let e: KleinZnEndo = field(args, "endo")?;
            Ok(to_json(&KleinZnEndo::new(e.n, e.images.clone())?.quotient_map()?))
        }
        "free_nilpotent_layer_basis" => {
            let d: FreeNilpotentDesc = field(args, "endo")?;
            let layer: usize = field(args, "layer")?;
            let b = LyndonBasis::new(d.endo.rank(), layer)?;
            Ok(json!({ "layer": layer, "rank": b.len(), "basis": b.word_labels() }))
        }
        "free_nilpotent_layer_map" => {
            let d: FreeNilpotentDesc = field(args, "endo")?;
            let layer: usize = field(args, "layer")?;
            if layer == 0 || layer > d.class {
                return Err(Error::Domain(format!("layer {layer} outside 1..={}", d.class)));
            }
            Ok(to_json(&AbelianDesc {
                matrix: induced_layer_matrix(&d.endo, layer)?,
                relations: None,
            }))
        }
        "free_nilpotent_quotient" => {
            let d: FreeNilpotentDesc = field(args, "endo")?;
            match d.class {
                0 | 1 => Err(Error::Precondition("class-1 group has no proper central quotient".into())),
                2 => Ok(to_json(&AbelianDesc {
                    matrix: d.endo.abelianization(),
                    relations: None,
                })),
                c => Ok(to_json(&FreeNilpotentDesc {
                    endo: d.endo,
                    class: c - 1,
                })),
            }
        }
        "tower_validate" => {
            let d: TowerDesc = field(args, "endo")?;
            d.tower.check_endo(&d.maps)?;
            Ok(json!({ "valid": true, "top_layer_central": true }))
        }
        "tower_layer_map" => {
            let d: TowerDesc = field(args, "endo")?;
            let layer: usize = field(args, "layer")?;
            if layer == 0 || layer > d.tower.class() {
                return Err(Error::Domain(format!("layer {layer} outside the tower")));
            }
            Ok(to_json(&AbelianDesc {
                matrix: d.maps.layer_matrices[layer - 1].clone(),
                relations: relations_or_none(d.tower.layer(layer)),
            }))
        }
        "tower_quotient" => {
            let d: TowerDesc = field(args, "endo")?;
            tower_quotient_value(&d)
        }
        "tower_is_torsion_free" => {
            let d: TowerDesc = field(args, "endo")?;
            Ok(json!({ "torsion_free": d.tower.layers.iter().all(|l| l.torsion.is_empty()) }))
        }
        "tower_torsion_quotient" => {
            let d: TowerDesc = field(args, "endo")?;
            d.tower.check_endo(&d.maps)?;
            tower_torsion_quotient_value(&d)
        }
        other => Err(Error::Verify(format!("unknown leaf operation {other:?}"))),
    }
}
