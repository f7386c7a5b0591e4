//! Turning group and endomorphism descriptors into problems.

use reidemeister::catalog::{
    build_free_abelian, build_g53, build_heisenberg_mod_tower, build_n_r, build_q42, CentralTower,
    DihedralAut, KleinAut, KleinZnEndo, TowerEndo,
};
use reidemeister::freenilp::EndoSpec;
use reidemeister::reidemeister::Problem;
use reidemeister::{Error, IntMatrix, Result};
use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::spec::Params;

fn from_json<T: DeserializeOwned>(v: &Value, what: &str) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn need<'a>(endo: Option<&'a Value>, group: &str) -> Result<&'a Value> {
    endo.ok_or_else(|| Error::Parse(format!("group {group} needs --endo")))
}

fn parse_str<T: std::str::FromStr<Err = Error> + DeserializeOwned>(v: &Value, what: &str) -> Result<T> {
    match v {
        Value::String(s) => s.parse(),
        _ => from_json(v, what),
    }
}

/// Words separated by `;` or `,`, or a JSON list of words, or
/// `{"rank": .., "images": [..]}`.
pub fn parse_free_endo(v: &Value, rank: Option<usize>) -> Result<EndoSpec> {
    let words: Vec<String> = match v {
        Value::String(s) => s.split([';', ',']).map(|w| w.trim().to_string()).collect(),
        Value::Array(_) => from_json(v, "endomorphism images")?,
        Value::Object(_) => return from_json(v, "endomorphism"),
        _ => return Err(Error::Parse("endomorphism must be words".into())),
    };
    let rank = rank.unwrap_or(words.len());
    EndoSpec::parse(rank, &words)
}

fn tower_endo(t: &CentralTower, v: &Value) -> Result<TowerEndo> {
    if v.get("layer_matrices").is_some() {
        let e: TowerEndo = from_json(v, "tower endomorphism")?;
        t.check_endo(&e)?;
        Ok(e)
    } else {
        let m: IntMatrix = from_json(v, "abelianization matrix")?;
        t.derive_endo(&m)
    }
}

fn catalog_tower(name: &str, params: &Params) -> Result<Option<CentralTower>> {
    let lower = name.to_ascii_lowercase();
    let base = if let Some(r) = lower.strip_prefix("n_") {
        let r: i64 = r.parse().map_err(|_| Error::Parse(format!("bad group {name:?}")))?;
        build_n_r(r)?
    } else if lower == "q42" {
        build_q42()
    } else if lower == "g53" {
        build_g53()
    } else if let Some(m) = lower.strip_prefix("heis-mod-") {
        let m: u64 = m.parse().map_err(|_| Error::Parse(format!("bad group {name:?}")))?;
        build_heisenberg_mod_tower(m)?
    } else if let Some(n) = lower.strip_prefix("z^") {
        let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad group {name:?}")))?;
        build_free_abelian(n)
    } else {
        return Ok(None);
    };
    Ok(Some(match params.n {
        Some(n) => base.product_with_zn(n),
        None => base,
    }))
}

pub fn resolve(group: &Value, endo: Option<&Value>, params: &Params) -> Result<Problem> {
    let (name, body) = match group {
        Value::String(s) => (s.clone(), None),
        Value::Object(o) => {
            let kind = o
                .get("kind")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("group descriptor needs a \"kind\"".into()))?;
            let mut rest = o.clone();
            rest.remove("kind");
            (kind.to_string(), Some(Value::Object(rest)))
        }
        _ => return Err(Error::Parse("group must be a name or an object".into())),
    };
    match name.as_str() {
        "abelian" => {
            let v = need(endo, &name)?;
            if v.get("matrix").is_some() {
                #[derive(serde::Deserialize)]
                #[serde(deny_unknown_fields)]
                struct Desc {
                    matrix: IntMatrix,
                    #[serde(default)]
                    relations: Option<IntMatrix>,
                }
                let d: Desc = from_json(v, "abelian endomorphism")?;
                Ok(Problem::Abelian { matrix: d.matrix, relations: d.relations })
            } else {
                Ok(Problem::Abelian { matrix: from_json(v, "matrix")?, relations: None })
            }
        }
        "klein" => Ok(Problem::Klein { aut: parse_str::<KleinAut>(need(endo, &name)?, "Klein automorphism")? }),
        "dihedral" => Ok(Problem::Dihedral {
            aut: parse_str::<DihedralAut>(need(endo, &name)?, "dihedral automorphism")?,
        }),
        "klein-zn" | "klein_times_zn" => {
            let e = match endo {
                Some(v) => {
                    let e: KleinZnEndo = from_json(v, "endomorphism of K x Z^n")?;
                    KleinZnEndo::new(e.n, e.images)?
                }
                None => KleinZnEndo::identity(params.n.unwrap_or(0)),
            };
            Ok(Problem::KleinTimesZn { endo: e })
        }
        "free-nilpotent" | "free_nilpotent" => {
            let endo = parse_free_endo(need(endo, &name)?, params.rank)?;
            let class = params.class.unwrap_or(2);
            Ok(Problem::FreeNilpotent { endo, class })
        }
        "tower" => {
            let body = body.ok_or_else(|| Error::Parse("group \"tower\" must be an inline descriptor".into()))?;
            let tower: CentralTower = from_json(&body, "tower")?;
            let endo = tower_endo(&tower, need(endo, "tower")?)?;
            Ok(Problem::Tower { tower, endo })
        }
        other => match catalog_tower(other, params)? {
            Some(tower) => {
                let endo = tower_endo(&tower, need(endo, other)?)?;
                Ok(Problem::Tower { tower, endo })
            }
            None => Err(Error::Parse(format!(
                "unknown group {other:?}; try klein, dihedral, klein-zn, free-nilpotent, abelian, N_<r>, Q42, G53, heis-mod-<m>, Z^<n> or an inline tower"
            ))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn names() {
        let p = Params::default();
        assert!(matches!(resolve(&json!("klein"), Some(&json!("b,r=2")), &p), Ok(Problem::Klein { .. })));
        let t = resolve(&json!("N_2"), Some(&json!([[2, 5], [1, 2]])), &p).unwrap();
        assert!(matches!(t, Problem::Tower { .. }));
        let f = resolve(&json!("free-nilpotent"), Some(&json!("x1 x1 x2; x1 x1 x1 x1 x1 x2 x2")), &p).unwrap();
        assert!(matches!(f, Problem::FreeNilpotent { class: 2, .. }));
        assert!(resolve(&json!("mystery"), None, &p).is_err());
    }

    #[test]
    fn g53_rejects_bad_abelianization() {
        let err = resolve(&json!("G53"), Some(&json!([[1, 1], [0, 1]])), &Params::default()).unwrap_err();
        assert!(err.to_string().contains("[B, y]"), "{err}");
    }
}
