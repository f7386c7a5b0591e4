use serde::{Deserialize, Serialize};

use super::dihedral::DihedralAut;
use super::klein::KleinElement;
use crate::error::{Error, Result};
use crate::exactla::{det, IntMatrix};

/// Element `(x^m y^k, z)` of the Klein bottle group times `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KleinZnElement {
    pub m: i64,
    pub k: i64,
    #[serde(default)]
    pub z: Vec<i64>,
}

impl KleinZnElement {
    pub fn identity(n: usize) -> Self {
        KleinZnElement {
            m: 0,
            k: 0,
            z: vec![0; n],
        }
    }

    pub fn klein(&self) -> KleinElement {
        KleinElement::new(self.m, self.k)
    }

    pub fn mul(&self, o: &KleinZnElement) -> KleinZnElement {
        let k = self.klein().mul(o.klein());
        KleinZnElement {
            m: k.m,
            k: k.k,
            z: self.z.iter().zip(&o.z).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn inverse(&self) -> KleinZnElement {
        let k = self.klein().inverse();
        KleinZnElement {
            m: k.m,
            k: k.k,
            z: self.z.iter().map(|a| -a).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> KleinZnElement {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.unsigned_abs()).fold(KleinZnElement::identity(self.z.len()), |acc, _| acc.mul(&base))
    }

    /// In the center `<y^2> x Z^n`.
    pub fn is_central(&self) -> bool {
        self.m == 0 && self.k.rem_euclid(2) == 0
    }
}

/// Endomorphism of `π_1(K) × Z^n` given by the images of `x, y, z_1..z_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KleinZnEndo {
    pub n: usize,
    pub images: Vec<KleinZnElement>,
}

impl KleinZnEndo {
    pub fn new(n: usize, images: Vec<KleinZnElement>) -> Result<Self> {
        if images.len() != n + 2 {
            return Err(Error::Validation(format!(
                "{} images for the {} generators of K x Z^{n}",
                images.len(),
                n + 2
            )));
        }
        if let Some(bad) = images.iter().find(|g| g.z.len() != n) {
            return Err(Error::Validation(format!(
                "image has {} free coordinates, expected {n}",
                bad.z.len()
            )));
        }
        let e = KleinZnEndo { n, images };
        e.check_relations()?;
        Ok(e)
    }

    /// Identity on `K` combined with `id` on `Z^n`.
    pub fn identity(n: usize) -> Self {
        let mut images = vec![
            KleinZnElement { m: 1, k: 0, z: vec![0; n] },
            KleinZnElement { m: 0, k: 1, z: vec![0; n] },
        ];
        for i in 0..n {
            let mut z = vec![0; n];
            z[i] = 1;
            images.push(KleinZnElement { m: 0, k: 0, z });
        }
        KleinZnEndo { n, images }
    }

    fn check_relations(&self) -> Result<()> {
        let (x, y) = (&self.images[0], &self.images[1]);
        let r = x.mul(y).mul(x).mul(&y.inverse());
        if r != KleinZnElement::identity(self.n) {
            return Err(Error::Validation("images violate x y x y^-1 = 1".into()));
        }
        for (i, z) in self.images[2..].iter().enumerate() {
            for (g, label) in self.images.iter().zip(["x", "y"].into_iter().chain(std::iter::repeat("z"))) {
                if z.mul(g) != g.mul(z) {
                    return Err(Error::Validation(format!(
                        "images violate [z{}, {label}] = 1",
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, g: &KleinZnElement) -> KleinZnElement {
        let mut out = self.images[0].pow(g.m).mul(&self.images[1].pow(g.k));
        for (e, img) in g.z.iter().zip(&self.images[2..]) {
            out = out.mul(&img.pow(*e));
        }
        out
    }

    /// Matrix of the restriction to the center `<y^2> x Z^n` in the basis
    /// `y^2, z_1, ..., z_n`; fails if the center is not mapped into itself.
    pub fn center_matrix(&self) -> Result<IntMatrix> {
        let mut basis_images = vec![self.images[1].pow(2)];
        basis_images.extend(self.images[2..].iter().cloned());
        let mut cols = Vec::new();
        for (i, g) in basis_images.iter().enumerate() {
            if !g.is_central() {
                let label = if i == 0 { "y^2".to_string() } else { format!("z{i}") };
                return Err(Error::Validation(format!("image of {label} is not central")));
            }
            let mut col = vec![(g.k / 2).into()];
            col.extend(g.z.iter().map(|&v| v.into()));
            cols.push(col);
        }
        IntMatrix::from_columns(self.n + 1, &cols)
    }

    /// Induced automorphism of the quotient by the center, `Z ⋊ Z_2`.
    pub fn quotient_map(&self) -> Result<DihedralAut> {
        let (x, y) = (&self.images[0], &self.images[1]);
        if x.k.rem_euclid(2) != 0 || x.m.abs() != 1 || y.k.rem_euclid(2) != 1 {
            return Err(Error::Validation(
                "induced map on the quotient by the center is not an automorphism".into(),
            ));
        }
        DihedralAut::new(x.m, y.m)
    }

    /// Automorphism iff the center map is unimodular and the quotient map is
    /// an automorphism.
    pub fn is_automorphism(&self) -> bool {
        self.quotient_map().is_ok()
            && self
                .center_matrix()
                .and_then(|m| det(&m))
                .is_ok_and(|d| d == 1.into() || d == (-1).into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(m: i64, k: i64, z: &[i64]) -> KleinZnElement {
        KleinZnElement { m, k, z: z.to_vec() }
    }

    #[test]
    fn identity_is_an_automorphism() {
        for n in 0..=3 {
            let e = KleinZnEndo::identity(n);
            assert!(e.is_automorphism());
            assert_eq!(e.quotient_map().unwrap(), DihedralAut::new(1, 0).unwrap());
        }
    }

    #[test]
    fn mixing_the_free_factor() {
        // y -> x^2 y^-1 z1, z1 -> y^2 z1
        let e = KleinZnEndo::new(1, vec![el(-1, 0, &[0]), el(2, -1, &[1]), el(0, 2, &[1])]).unwrap();
        assert_eq!(e.center_matrix().unwrap(), IntMatrix::from_rows(&[[-1, 1], [2, 1]]));
        assert!(!e.is_automorphism());
        let f = KleinZnEndo::new(1, vec![el(-1, 0, &[0]), el(2, -1, &[1]), el(0, 2, &[-1])]).unwrap();
        assert!(f.is_automorphism());
        assert_eq!(f.quotient_map().unwrap(), DihedralAut::new(-1, 2).unwrap());
    }

    #[test]
    fn relation_violations() {
        assert!(KleinZnEndo::new(0, vec![el(1, 0, &[]), el(1, 0, &[])]).is_err());
        assert!(KleinZnEndo::new(1, vec![el(1, 0, &[0]), el(0, 1, &[0]), el(1, 0, &[1])]).is_err());
    }
}
