use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use super::endo::EndoSpec;
use super::lyndon::{standard_factorization, LyndonBasis};
use super::series::{magnus_expand, TruncSeries};
use super::word::FreeWord;
use crate::error::{Error, Result};
use crate::exactla::{coker_order, det, IntMatrix};
use crate::value::ReidValue;

/// Whether `u ≡ v` in `F_r / Gamma_k`. Truncation at degree `k - 1` detects
/// `Gamma_k` in a free group.
pub fn equals_mod_gamma(u: &FreeWord, v: &FreeWord, k: usize) -> Result<bool> {
    if k < 2 {
        return Err(Error::Domain(format!("Gamma_{k} is not a proper term; use k >= 2")));
    }
    if u.rank() != v.rank() {
        return Err(Error::RankMismatch {
            left: u.rank(),
            right: v.rank(),
        });
    }
    Ok(magnus_expand(u, k - 1)? == magnus_expand(v, k - 1)?)
}

/// Position of a word in the lower central series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LcsDegree {
    /// Lies in `Gamma_n` but not in `Gamma_{n+1}`.
    Degree(usize),
    /// Nontrivial, but lies in `Gamma_{cap+1}`.
    AboveCap,
    Trivial,
}

pub fn lcs_degree(w: &FreeWord, cap: usize) -> Result<LcsDegree> {
    if w.is_empty() {
        return Ok(LcsDegree::Trivial);
    }
    let s = magnus_expand(w, cap)?;
    Ok(match s.min_positive_degree() {
        Some(d) => LcsDegree::Degree(d),
        None => LcsDegree::AboveCap,
    })
}

fn series_coordinates(s: &TruncSeries, basis: &LyndonBasis) -> Result<Vec<BigInt>> {
    let n = basis.degree();
    if let Some(d) = s.min_positive_degree().filter(|&d| d < n) {
        return Err(Error::Precondition(format!(
            "element has a degree-{d} term, so it is not in Gamma_{n}"
        )));
    }
    basis.coordinates(&s.homogeneous_part(n))
}

/// Coordinates of `w Gamma_{n+1}` in the Lyndon basis of `Gamma_n / Gamma_{n+1}`.
pub fn layer_coordinates(w: &FreeWord, n: usize) -> Result<Vec<BigInt>> {
    if n == 0 {
        return Err(Error::Domain("layers start at degree 1".into()));
    }
    let basis = LyndonBasis::new(w.rank(), n)?;
    series_coordinates(&magnus_expand(w, n)?, &basis)
}

/// Group commutator on series carried together with their inverses.
struct Unit {
    s: TruncSeries,
    inv: TruncSeries,
}

fn commutator(a: &Unit, b: &Unit) -> Result<Unit> {
    let ab = a.s.mul(&b.s)?;
    let ba = b.s.mul(&a.s)?;
    let ainv_binv = a.inv.mul(&b.inv)?;
    let binv_ainv = b.inv.mul(&a.inv)?;
    Ok(Unit {
        s: ab.mul(&ainv_binv)?,
        inv: ba.mul(&binv_ainv)?,
    })
}

fn evaluate_lyndon(
    w: &[usize],
    leaves: &[Unit],
    memo: &mut HashMap<Vec<usize>, Unit>,
) -> Result<()> {
    if memo.contains_key(w) || w.len() == 1 {
        return Ok(());
    }
    let (u, v) = standard_factorization(w).expect("Lyndon words of length >= 2 factor");
    evaluate_lyndon(u, leaves, memo)?;
    evaluate_lyndon(v, leaves, memo)?;
    let value = {
        let pick = |x: &[usize]| if x.len() == 1 { &leaves[x[0]] } else { &memo[x] };
        commutator(pick(u), pick(v))?
    };
    memo.insert(w.to_vec(), value);
    Ok(())
}

/// Matrix of the map induced by `e` on `Gamma_n / Gamma_{n+1}` in the Lyndon
/// basis; column `j` holds the coordinates of the image of basis element `j`.
pub fn induced_layer_matrix(e: &EndoSpec, n: usize) -> Result<IntMatrix> {
    if n == 0 {
        return Err(Error::Domain("layers start at degree 1".into()));
    }
    if n == 1 {
        return Ok(e.abelianization());
    }
    let basis = LyndonBasis::new(e.rank(), n)?;
    let leaves = e
        .images()
        .iter()
        .map(|w| {
            Ok(Unit {
                s: magnus_expand(w, n)?,
                inv: magnus_expand(&w.inverse(), n)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut memo = HashMap::new();
    let mut columns = Vec::with_capacity(basis.len());
    for w in basis.words() {
        evaluate_lyndon(w, &leaves, &mut memo)?;
        columns.push(series_coordinates(&memo[w].s, &basis)?);
    }
    Ok(IntMatrix::from_fn(basis.len(), basis.len(), |i, j| columns[j][i].clone()))
}

/// An endomorphism of a free nilpotent group is an automorphism iff its
/// abelianization is unimodular.
pub fn is_automorphism_free_nilpotent(e: &EndoSpec) -> bool {
    det(&e.abelianization()).is_ok_and(|d| d.abs() == BigInt::from(1))
}

/// One factor of the lower central product.
#[derive(Clone, Debug, Serialize)]
pub struct LayerFactor {
    pub degree: usize,
    pub rank: usize,
    pub matrix: IntMatrix,
    #[serde(with = "crate::exactla::bigint_string")]
    pub det_identity_minus: BigInt,
    pub value: ReidValue,
}

#[derive(Clone, Debug, Serialize)]
pub struct FreeNilpotentReid {
    pub class: usize,
    pub endo: EndoSpec,
    pub layers: Vec<LayerFactor>,
    pub value: ReidValue,
}

/// Product over the layers `n = 1..=c` of `#Coker(I - L_n)`.
pub fn reid_free_nilpotent(e: &EndoSpec, c: usize) -> Result<FreeNilpotentReid> {
    if c == 0 {
        return Err(Error::Domain("class must be at least 1".into()));
    }
    let layers = (1..=c)
        .into_par_iter()
        .map(|n| {
            let matrix = induced_layer_matrix(e, n)?;
            let im = matrix.identity_minus()?;
            let det_identity_minus = det(&im)?;
            let value = coker_order(&im)?;
            Ok(LayerFactor {
                degree: n,
                rank: matrix.rows(),
                matrix,
                det_identity_minus,
                value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let value = ReidValue::product(layers.iter().map(|l| &l.value));
    Ok(FreeNilpotentReid {
        class: c,
        endo: e.clone(),
        layers,
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freenilp::word::rank2::{b, comm, w, w1, x, y};

    #[test]
    fn word_problem_examples() {
        let one = FreeWord::identity(2);
        assert!(equals_mod_gamma(&b(), &one, 2).unwrap());
        assert!(!equals_mod_gamma(&b(), &one, 3).unwrap());
        let bx = comm(&b(), &x());
        let by = comm(&b(), &y());
        assert!(!equals_mod_gamma(&by, &bx, 4).unwrap());
        assert!(matches!(equals_mod_gamma(&b(), &one, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn lcs_degrees() {
        assert_eq!(lcs_degree(&x(), 3).unwrap(), LcsDegree::Degree(1));
        assert_eq!(lcs_degree(&w(), 8).unwrap(), LcsDegree::Degree(6));
        assert_eq!(lcs_degree(&w(), 5).unwrap(), LcsDegree::AboveCap);
        assert_eq!(lcs_degree(&FreeWord::identity(2), 5).unwrap(), LcsDegree::Trivial);
    }

    #[test]
    fn coordinates_in_low_layers() {
        assert_eq!(layer_coordinates(&b(), 2).unwrap(), vec![BigInt::from(1)]);
        let c = layer_coordinates(&comm(&b(), &y()), 3).unwrap();
        // basis [xxy, xyy]
        assert_eq!(c[0], BigInt::from(0));
        assert_eq!(c[1].abs(), BigInt::from(1));
        assert!(matches!(layer_coordinates(&x(), 2), Err(Error::Precondition(_))));
        assert_eq!(layer_coordinates(&FreeWord::identity(2), 4).unwrap(), vec![BigInt::from(0); 3]);
    }

    #[test]
    fn layer_two_is_the_determinant() {
        let shear = EndoSpec::parse(2, &["x1", "x1 x2"]).unwrap();
        assert_eq!(induced_layer_matrix(&shear, 2).unwrap(), IntMatrix::from_rows(&[[1]]));
        let swap = EndoSpec::parse(2, &["x2", "x1"]).unwrap();
        assert_eq!(induced_layer_matrix(&swap, 2).unwrap(), IntMatrix::from_rows(&[[-1]]));
        let l3 = induced_layer_matrix(&swap, 3).unwrap();
        assert_eq!(l3.rows(), 2);
        assert_eq!(det(&l3).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn hyperbolic_example_value() {
        let e = EndoSpec::parse(2, &["x1 x1 x2", "x1 x1 x1 x1 x1 x2 x2"]).unwrap();
        assert!(is_automorphism_free_nilpotent(&e));
        let r = reid_free_nilpotent(&e, 2).unwrap();
        assert_eq!(r.value, ReidValue::finite(8));
        assert_eq!(r.layers[0].value, ReidValue::finite(4));
        assert_eq!(r.layers[1].value, ReidValue::finite(2));
        assert!(!is_automorphism_free_nilpotent(&EndoSpec::parse(2, &["x1 x1", "x2"]).unwrap()));
        assert!(reid_free_nilpotent(&EndoSpec::identity(2), 3).unwrap().value.is_infinite());
    }

    #[test]
    fn w1_sits_in_layer_eight() {
        assert_eq!(lcs_degree(&w1(), 9).unwrap(), LcsDegree::Degree(8));
    }
}
