use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest group enumerated.
pub const MAX_ELEMENTS: u64 = 1_000_000;
/// Largest group for which a multiplication table is stored.
pub const MAX_TABLE: usize = 1024;

/// Exponent vector `g_0^e_0 ... g_{n-1}^e_{n-1}` with `0 <= e_i < p_i`.
pub type PcVector = Vec<u32>;

/// Finite group given by a consistent polycyclic presentation: relative
/// orders `p_i`, powers `g_i^{p_i}` and conjugates `g_j^-1 g_k g_j` for
/// `j < k`, each a normal form in the later generators.
#[derive(Clone, Debug)]
pub struct FinitePcGroup {
    name: String,
    names: Vec<String>,
    orders: Vec<u32>,
    powers: Vec<PcVector>,
    conjugates: Vec<Vec<PcVector>>,
    size: usize,
    strides: Vec<usize>,
    table: Option<Vec<u32>>,
}

/// A relation of the presentation, used to name violations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PcRelation {
    Power(usize),
    Conjugate(usize, usize),
}

impl FinitePcGroup {
    /// `powers` and `conjugates` list only the nontrivial relations; unlisted
    /// powers are trivial and unlisted pairs commute.
    pub fn new(
        name: impl Into<String>,
        names: Vec<String>,
        orders: Vec<u32>,
        powers: Vec<(usize, PcVector)>,
        conjugates: Vec<((usize, usize), PcVector)>,
    ) -> Result<Self> {
        let n = orders.len();
        if names.len() != n {
            return Err(Error::Validation("one name per generator".into()));
        }
        if let Some(p) = orders.iter().find(|&&p| p < 2) {
            return Err(Error::Validation(format!("relative order {p} < 2")));
        }
        let total = orders.iter().try_fold(1u64, |acc, &p| {
            acc.checked_mul(p as u64).filter(|&t| t <= MAX_ELEMENTS)
        });
        let size = total.ok_or_else(|| {
            Error::TooLarge(format!("group order exceeds the enumeration cap {MAX_ELEMENTS}"))
        })? as usize;
        let check = |v: &PcVector, after: usize, what: &str| -> Result<()> {
            if v.len() != n || v.iter().zip(&orders).any(|(e, p)| e >= p) {
                return Err(Error::Validation(format!("{what} is not a normal form")));
            }
            if v[..=after].iter().any(|&e| e != 0) {
                return Err(Error::Validation(format!(
                    "{what} must only involve generators after {}",
                    names[after]
                )));
            }
            Ok(())
        };
        let mut pw = vec![vec![0; n]; n];
        for (i, v) in powers {
            if i >= n {
                return Err(Error::Validation(format!("power relation for missing generator {i}")));
            }
            check(&v, i, &format!("power of {}", names[i]))?;
            pw[i] = v;
        }
        let mut conj: Vec<Vec<PcVector>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|k| {
                        let mut e = vec![0; n];
                        e[k] = 1;
                        e
                    })
                    .collect()
            })
            .collect();
        for ((j, k), v) in conjugates {
            if j >= k || k >= n {
                return Err(Error::Validation(format!("conjugate relation ({j},{k}) needs j < k < {n}")));
            }
            check(&v, j, &format!("conjugate of {} by {}", names[k], names[j]))?;
            conj[j][k] = v;
        }
        let mut strides = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * orders[i + 1] as usize;
        }
        let mut g = FinitePcGroup {
            name: name.into(),
            names,
            orders,
            powers: pw,
            conjugates: conj,
            size,
            strides,
            table: None,
        };
        g.check_consistency()?;
        if size <= MAX_TABLE {
            let mut t = vec![0u32; size * size];
            for a in 0..size {
                for b in 0..size {
                    t[a * size + b] = g.index(&g.mul_vectors(&g.vector(a), &g.vector(b))) as u32;
                }
            }
            g.table = Some(t);
        }
        Ok(g)
    }

    /// Cyclic group `Z_m`; `m = 1` gives the trivial group.
    pub fn cyclic(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("cyclic group of order 0".into()));
        }
        if m == 1 {
            return Self::new("1", vec![], vec![], vec![], vec![]);
        }
        Self::new(format!("Z_{m}"), vec!["g".into()], vec![m], vec![], vec![])
    }

    /// `Z_{m_1} x ... x Z_{m_k}`.
    pub fn abelian(orders: &[u32]) -> Result<Self> {
        let names = (1..=orders.len()).map(|i| format!("g{i}")).collect();
        let label = orders.iter().map(|m| format!("Z_{m}")).collect::<Vec<_>>().join("x");
        Self::new(label, names, orders.to_vec(), vec![], vec![])
    }

    /// Heisenberg group over `Z_m`: generators `a, b, c` with `[a, b] = c`
    /// central, so `a^-1 b a = b c^{m-1}`. Order `m^3`, center `<c>`.
    pub fn heisenberg_mod(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::Domain(format!("modulus {m} < 2")));
        }
        Self::new(
            format!("Heis(Z_{m})"),
            vec!["a".into(), "b".into(), "c".into()],
            vec![m, m, m],
            vec![],
            vec![((0, 1), vec![0, 1, m - 1])],
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn generators(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generator(&self, i: usize) -> usize {
        self.strides[i]
    }

    pub fn index(&self, v: &[u32]) -> usize {
        v.iter().zip(&self.strides).map(|(&e, &s)| e as usize * s).sum()
    }

    pub fn vector(&self, mut idx: usize) -> PcVector {
        let mut v = vec![0; self.orders.len()];
        for (i, &s) in self.strides.iter().enumerate() {
            v[i] = (idx / s) as u32;
            idx %= s;
        }
        v
    }

    pub fn format_element(&self, idx: usize) -> String {
        let v = self.vector(idx);
        let mut s = String::new();
        for (i, &e) in v.iter().enumerate().filter(|(_, &e)| e > 0) {
            if !s.is_empty() {
                s.push(' ');
            }
            let _ = if e == 1 {
                write!(s, "{}", self.names[i])
            } else {
                write!(s, "{}^{e}", self.names[i])
            };
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    fn mul_gen(&self, v: &mut PcVector, j: usize) {
        let n = v.len();
        let tail: PcVector = v[j + 1..].to_vec();
        v[j + 1..].iter_mut().for_each(|e| *e = 0);
        v[j] += 1;
        if v[j] == self.orders[j] {
            v[j] = 0;
            v[j + 1..].copy_from_slice(&self.powers[j][j + 1..]);
        }
        for k in j + 1..n {
            for _ in 0..tail[k - j - 1] {
                self.mul_vec_in_place(v, &self.conjugates[j][k]);
            }
        }
    }

    fn mul_vec_in_place(&self, v: &mut PcVector, w: &[u32]) {
        for (k, &e) in w.iter().enumerate() {
            for _ in 0..e {
                self.mul_gen(v, k);
            }
        }
    }

    fn mul_vectors(&self, a: &[u32], b: &[u32]) -> PcVector {
        let mut v = a.to_vec();
        self.mul_vec_in_place(&mut v, b);
        v
    }

    /// Right multiplication by generators is a permutation of normal forms
    /// satisfying every relation, so the presentation defines a group of
    /// exactly `size` elements acting regularly.
    fn check_consistency(&self) -> Result<()> {
        let n = self.orders.len();
        for a in 0..self.size {
            let va = self.vector(a);
            for i in 0..n {
                let mut lhs = va.clone();
                for _ in 0..self.orders[i] {
                    self.mul_gen(&mut lhs, i);
                }
                let rhs = self.mul_vectors(&va, &self.powers[i]);
                if lhs != rhs {
                    return Err(Error::Validation(format!(
                        "inconsistent presentation at relation {}",
                        self.relation_label(&PcRelation::Power(i))
                    )));
                }
                for k in i + 1..n {
                    let mut lhs = va.clone();
                    self.mul_gen(&mut lhs, k);
                    self.mul_gen(&mut lhs, i);
                    let mut rhs = va.clone();
                    self.mul_gen(&mut rhs, i);
                    self.mul_vec_in_place(&mut rhs, &self.conjugates[i][k]);
                    if lhs != rhs {
                        return Err(Error::Validation(format!(
                            "inconsistent presentation at relation {}",
                            self.relation_label(&PcRelation::Conjugate(i, k))
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            let mut seen = vec![false; self.size];
            for a in 0..self.size {
                let mut v = self.vector(a);
                self.mul_gen(&mut v, i);
                let b = self.index(&v);
                if std::mem::replace(&mut seen[b], true) {
                    return Err(Error::Validation(format!(
                        "multiplication by {} is not injective",
                        self.names[i]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.size + b] as usize,
            None => self.index(&self.mul_vectors(&self.vector(a), &self.vector(b))),
        }
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        (0..e).fold(self.identity(), |acc, _| self.mul(acc, a))
    }

    pub fn inverse(&self, a: usize) -> usize {
        let mut prev = self.identity();
        let mut cur = a;
        while cur != self.identity() {
            prev = cur;
            cur = self.mul(cur, a);
        }
        prev
    }

    pub fn relation_label(&self, r: &PcRelation) -> String {
        let word = |v: &PcVector| self.format_element(self.index(v));
        match *r {
            PcRelation::Power(i) => format!("{}^{} = {}", self.names[i], self.orders[i], word(&self.powers[i])),
            PcRelation::Conjugate(j, k) => format!(
                "{}^-1 {} {} = {}",
                self.names[j],
                self.names[k],
                self.names[j],
                word(&self.conjugates[j][k])
            ),
        }
    }

    /// Image of a normal form under generator images.
    fn evaluate(&self, images: &[usize], v: &[u32]) -> usize {
        v.iter()
            .zip(images)
            .fold(self.identity(), |acc, (&e, &img)| self.mul(acc, self.pow(img, e as u64)))
    }

    /// Checks that `images` (element indices into `target`, one per generator)
    /// respect every relation, and returns the element map.
    pub fn hom_table(&self, target: &FinitePcGroup, images: &[usize]) -> Result<Vec<usize>> {
        if images.len() != self.generators() {
            return Err(Error::Validation(format!(
                "{} images for {} generators",
                images.len(),
                self.generators()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&i| i >= target.order()) {
            return Err(Error::Validation(format!("image index {bad} outside the target")));
        }
        let n = self.generators();
        for i in 0..n {
            let lhs = target.pow(images[i], self.orders[i] as u64);
            let rhs = target.evaluate(images, &self.powers[i]);
            if lhs != rhs {
                return Err(Error::Validation(format!(
                    "images violate the relation {}",
                    self.relation_label(&PcRelation::Power(i))
                )));
            }
            for k in i + 1..n {
                let lhs = target.mul(target.mul(target.inverse(images[i]), images[k]), images[i]);
                let rhs = target.evaluate(images, &self.conjugates[i][k]);
                if lhs != rhs {
                    return Err(Error::Validation(format!(
                        "images violate the relation {}",
                        self.relation_label(&PcRelation::Conjugate(i, k))
                    )));
                }
            }
        }
        Ok((0..self.size)
            .map(|a| target.evaluate(images, &self.vector(a)))
            .collect())
    }

    /// Endomorphism element map from generator images.
    pub fn endo_table(&self, images: &[usize]) -> Result<Vec<usize>> {
        self.hom_table(self, images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_orders() {
        for m in 2..=4u32 {
            let g = FinitePcGroup::heisenberg_mod(m).unwrap();
            assert_eq!(g.order(), (m * m * m) as usize);
            let (a, b, c) = (g.generator(0), g.generator(1), g.generator(2));
            let comm = g.mul(g.mul(a, b), g.mul(g.inverse(a), g.inverse(b)));
            assert_eq!(comm, c);
            let distinct: std::collections::HashSet<_> = (0..g.order()).map(|i| g.vector(i)).collect();
            assert_eq!(distinct.len(), g.order());
        }
        assert!(FinitePcGroup::heisenberg_mod(1).is_err());
    }

    #[test]
    fn associativity_small() {
        let g = FinitePcGroup::heisenberg_mod(3).unwrap();
        for a in (0..27).step_by(4) {
            for b in 0..27 {
                for c in (0..27).step_by(5) {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn inconsistent_presentation_is_rejected() {
        // b^a = b^2 in Z_2 x Z_3 would need an automorphism of order dividing 2: fine.
        // b^a = b^2 with a of order 3 is not.
        let bad = FinitePcGroup::new("bad", vec!["a".into(), "b".into()], vec![3, 3], vec![], vec![((0, 1), vec![0, 2])]);
        assert!(bad.is_err());
        let ok = FinitePcGroup::new("S3", vec!["a".into(), "b".into()], vec![2, 3], vec![], vec![((0, 1), vec![0, 2])]);
        assert_eq!(ok.unwrap().order(), 6);
    }

    #[test]
    fn hom_validation_names_relation() {
        let g = FinitePcGroup::heisenberg_mod(2).unwrap();
        let (a, b, c) = (g.generator(0), g.generator(1), g.generator(2));
        assert!(g.endo_table(&[a, b, c]).is_ok());
        let err = g.endo_table(&[a, b, g.identity()]).unwrap_err();
        assert!(err.to_string().contains("a^-1 b a"), "{err}");
    }

    #[test]
    fn too_large() {
        assert!(matches!(
            FinitePcGroup::abelian(&[1000, 1000, 2]),
            Err(Error::TooLarge(_))
        ));
    }
}
