//! Seeded randomized laws on free nilpotent groups of rank 2.

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::exactla::{bigvec, det};
use crate::freenilp::{induced_layer_matrix, layer_coordinates, rank2, reid_free_nilpotent, EndoSpec};
use crate::value::ReidValue;

pub const LAYER_TWO_SEED: u64 = 32;
pub const FIXED_ELEMENT_SEED: u64 = 35;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LayerTwoCase {
    pub endo: String,
    #[serde(with = "crate::exactla::bigint_string")]
    pub det_abelianization: BigInt,
    #[serde(with = "bigvec")]
    pub layer_two: Vec<BigInt>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LayerTwoReport {
    pub seed: u64,
    pub count: usize,
    pub max_word_length: usize,
    pub failures: usize,
    pub cases: Vec<LayerTwoCase>,
}

/// For random rank-2 endomorphisms the map on `Gamma_2 / Gamma_3` is the
/// 1x1 matrix `[det(abelianization)]`.
pub fn layer_two_law(seed: u64, count: usize, max_word_length: usize) -> Result<LayerTwoReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let endos: Vec<EndoSpec> = (0..count).map(|_| EndoSpec::random(&mut rng, 2, max_word_length)).collect();
    let cases = endos
        .iter()
        .map(|e| {
            let d = det(&e.abelianization())?;
            let l2 = induced_layer_matrix(e, 2)?;
            let entries: Vec<BigInt> = (0..l2.rows())
                .flat_map(|i| (0..l2.cols()).map(move |j| (i, j)))
                .map(|(i, j)| l2.get(i, j).clone())
                .collect();
            Ok(LayerTwoCase {
                endo: e.to_string(),
                holds: entries == [d.clone()],
                det_abelianization: d,
                layer_two: entries,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LayerTwoReport {
        seed,
        count,
        max_word_length,
        failures: cases.iter().filter(|c| !c.holds).count(),
        cases,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixedElementCase {
    pub endo: String,
    #[serde(with = "crate::exactla::bigint_string")]
    pub det_abelianization: BigInt,
    pub fixed: bool,
    pub value: ReidValue,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixedElementReport {
    pub seed: u64,
    pub count: usize,
    pub nielsen_moves: usize,
    #[serde(with = "bigvec")]
    pub w1_coordinates: Vec<BigInt>,
    pub failures: usize,
    pub cases: Vec<FixedElementCase>,
}

/// Automorphisms with abelianization determinant -1 fix the layer-8
/// coordinates of `w1`, so `R` is infinite on `F_2 / Gamma_9`.
pub fn fixed_element_law(seed: u64, count: usize, nielsen_moves: usize) -> Result<FixedElementReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let endos: Vec<EndoSpec> = (0..count)
        .map(|_| EndoSpec::random_det_minus_one(&mut rng, 2, nielsen_moves))
        .collect();
    let w1 = layer_coordinates(&rank2::w1(), 8)?;
    let cases = endos
        .par_iter()
        .map(|e| {
            let rep = reid_free_nilpotent(e, 8)?;
            let l8 = &rep.layers[7].matrix;
            let image = l8.mul_vec(&w1)?;
            Ok(FixedElementCase {
                endo: e.to_string(),
                det_abelianization: det(&e.abelianization())?,
                fixed: image == w1,
                value: rep.value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FixedElementReport {
        seed,
        count,
        nielsen_moves,
        w1_coordinates: w1,
        failures: cases
            .iter()
            .filter(|c| !c.fixed || !c.value.is_infinite() || c.det_abelianization != BigInt::from(-1))
            .count(),
        cases,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layer_two_law_small() {
        let r = layer_two_law(1, 10, 4).unwrap();
        assert_eq!(r.failures, 0);
        assert_eq!(r, layer_two_law(1, 10, 4).unwrap());
    }
}
