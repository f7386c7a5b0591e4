use serde::Serialize;

use super::abelian::reid_fg_abelian;
use super::leaf::relations_or_none;
use crate::catalog::{CentralTower, TowerEndo};
use crate::error::Result;
use crate::exactla::IntMatrix;
use crate::value::ReidValue;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TowerLayerReid {
    pub layer: usize,
    pub matrix: IntMatrix,
    pub value: ReidValue,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TowerReid {
    pub group: String,
    pub layers: Vec<TowerLayerReid>,
    pub value: ReidValue,
}

/// Product of the per-layer values after validating `e` against the
/// structure constants.
pub fn reid_central_tower(t: &CentralTower, e: &TowerEndo) -> Result<TowerReid> {
    t.check_endo(e)?;
    let layers = e
        .layer_matrices
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let rel = relations_or_none(t.layer(i + 1));
            Ok(TowerLayerReid {
                layer: i + 1,
                matrix: m.clone(),
                value: reid_fg_abelian(m, rel.as_ref())?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let value = ReidValue::product(layers.iter().map(|l| &l.value));
    Ok(TowerReid {
        group: t.name.clone(),
        layers,
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_g53, build_n_r};

    #[test]
    fn n_r_example_value_is_eight() {
        for r in [1, 2, 3, -2] {
            let t = build_n_r(r).unwrap();
            let e = t.derive_endo(&IntMatrix::from_rows(&[[2, 5], [1, 2]])).unwrap();
            let rep = reid_central_tower(&t, &e).unwrap();
            assert_eq!(rep.value, ReidValue::finite(8));
            assert_eq!(rep.layers[0].value, ReidValue::finite(4));
            assert_eq!(rep.layers[1].value, ReidValue::finite(2));
        }
    }

    #[test]
    fn g53_det_one_is_infinite() {
        let t = build_g53();
        let e = t.derive_endo(&IntMatrix::from_rows(&[[-1, 0], [3, -1]])).unwrap();
        assert!(reid_central_tower(&t, &e).unwrap().value.is_infinite());
    }

    #[test]
    fn contradictory_layer_map_is_rejected() {
        let t = build_n_r(1).unwrap();
        let mut e = t.derive_endo(&IntMatrix::from_rows(&[[2, 5], [1, 2]])).unwrap();
        e.layer_matrices[1] = IntMatrix::from_rows(&[[1]]);
        assert!(reid_central_tower(&t, &e).is_err());
    }
}
