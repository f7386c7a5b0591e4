use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{solve_right, IntMatrix};

/// Maximum nilpotency class handled by towers.
pub const MAX_TOWER_CLASS: usize = 3;

/// `Z^free_rank ⊕ Z_{t_1} ⊕ ...`; generators are ordered free first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelianLayer {
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub names: Vec<String>,
}

impl AbelianLayer {
    pub fn free(free_rank: usize, names: &[&str]) -> Self {
        AbelianLayer {
            free_rank,
            torsion: Vec::new(),
            names: names.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Order of generator `i`; `None` for free generators.
    pub fn order(&self, i: usize) -> Option<u64> {
        i.checked_sub(self.free_rank).map(|t| self.torsion[t])
    }

    /// Relation matrix: one column `t e_i` per torsion generator.
    pub fn relations(&self) -> IntMatrix {
        let g = self.generators();
        let mut r = IntMatrix::zeros(g, self.torsion.len());
        for (t, &d) in self.torsion.iter().enumerate() {
            r.set(self.free_rank + t, t, BigInt::from(d));
        }
        r
    }

    fn reduce(&self, v: &mut [BigInt]) {
        for (t, &d) in self.torsion.iter().enumerate() {
            v[self.free_rank + t] = v[self.free_rank + t].mod_floor(&BigInt::from(d));
        }
    }
}

/// Generator `index` (0-based) of layer `layer` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenRef {
    pub layer: usize,
    pub index: usize,
}

impl GenRef {
    pub fn new(layer: usize, index: usize) -> Self {
        GenRef { layer, index }
    }
}

/// Structure constant `[left, right] = value` with `value` written in layer
/// `left.layer + right.layer`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketRule {
    pub left: GenRef,
    pub right: GenRef,
    pub value: Vec<i64>,
}

/// A group given as a tower of central extensions with abelian layers and
/// the commutator structure constants between them (class at most 3).
/// Pairs missing from `brackets` commute.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, try_from = "RawTower")]
pub struct CentralTower {
    pub name: String,
    pub layers: Vec<AbelianLayer>,
    pub brackets: Vec<BracketRule>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTower {
    name: String,
    layers: Vec<AbelianLayer>,
    #[serde(default)]
    brackets: Vec<BracketRule>,
}

impl TryFrom<RawTower> for CentralTower {
    type Error = Error;

    fn try_from(raw: RawTower) -> Result<Self> {
        CentralTower::new(raw.name, raw.layers, raw.brackets)
    }
}

/// Endomorphism of a tower given by one matrix per layer (columns are images
/// of the layer generators).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerEndo {
    pub layer_matrices: Vec<IntMatrix>,
}

impl CentralTower {
    pub fn new(name: impl Into<String>, layers: Vec<AbelianLayer>, brackets: Vec<BracketRule>) -> Result<Self> {
        let t = CentralTower {
            name: name.into(),
            layers,
            brackets,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn class(&self) -> usize {
        self.layers.len()
    }

    pub fn layer(&self, n: usize) -> &AbelianLayer {
        &self.layers[n - 1]
    }

    pub fn layer_ranks(&self) -> Vec<usize> {
        self.layers.iter().map(AbelianLayer::generators).collect()
    }

    pub fn hirsch_length(&self) -> usize {
        self.layers.iter().map(|l| l.free_rank).sum()
    }

    pub fn generator_name(&self, g: GenRef) -> String {
        self.layers
            .get(g.layer.wrapping_sub(1))
            .and_then(|l| l.names.get(g.index).cloned())
            .unwrap_or_else(|| format!("g{}_{}", g.layer, g.index + 1))
    }

    fn format_vec(&self, layer: usize, v: &[BigInt]) -> String {
        let mut s = String::new();
        for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !s.is_empty() {
                s.push_str(" + ");
            }
            let _ = write!(s, "{c}*{}", self.generator_name(GenRef::new(layer, i)));
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    fn validate(&self) -> Result<()> {
        let c = self.class();
        if c == 0 || c > MAX_TOWER_CLASS {
            return Err(Error::Validation(format!(
                "tower class {c} outside 1..={MAX_TOWER_CLASS}"
            )));
        }
        for (n, l) in self.layers.iter().enumerate() {
            if let Some(&d) = l.torsion.iter().find(|&&d| d < 2) {
                return Err(Error::Validation(format!("layer {} has torsion order {d}", n + 1)));
            }
            if !l.names.is_empty() && l.names.len() != l.generators() {
                return Err(Error::Validation(format!(
                    "layer {} has {} names for {} generators",
                    n + 1,
                    l.names.len(),
                    l.generators()
                )));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for b in &self.brackets {
            for g in [b.left, b.right] {
                if g.layer == 0 || g.layer > c || g.index >= self.layer(g.layer).generators() {
                    return Err(Error::Validation(format!("bracket refers to missing generator {g:?}")));
                }
            }
            let target = b.left.layer + b.right.layer;
            let label = format!(
                "[{}, {}]",
                self.generator_name(b.left),
                self.generator_name(b.right)
            );
            if b.left == b.right {
                return Err(Error::Validation(format!("{label} brackets a generator with itself")));
            }
            if !seen.insert((b.left, b.right)) || !seen.insert((b.right, b.left)) {
                return Err(Error::Validation(format!("{label} is given twice")));
            }
            if target > c {
                if b.value.iter().any(|&x| x != 0) {
                    return Err(Error::Validation(format!(
                        "{label} would land in layer {target} beyond class {c}"
                    )));
                }
                continue;
            }
            if b.value.len() != self.layer(target).generators() {
                return Err(Error::Validation(format!(
                    "{label} has {} coordinates, layer {target} has {} generators",
                    b.value.len(),
                    self.layer(target).generators()
                )));
            }
        }
        // Torsion generators must have brackets killed by their order.
        for p in 1..=c {
            for q in 1..=c - p {
                for i in 0..self.layer(p).generators() {
                    let Some(d) = self.layer(p).order(i) else { continue };
                    for j in 0..self.layer(q).generators() {
                        let mut v = self.bracket(GenRef::new(p, i), GenRef::new(q, j));
                        for x in v.iter_mut() {
                            *x *= d;
                        }
                        self.layer(p + q).reduce(&mut v);
                        if v.iter().any(|x| !x.is_zero()) {
                            return Err(Error::Validation(format!(
                                "{} has order {d} but its bracket with {} is not killed by {d}",
                                self.generator_name(GenRef::new(p, i)),
                                self.generator_name(GenRef::new(q, j))
                            )));
                        }
                    }
                }
            }
        }
        if c >= 3 {
            self.check_jacobi()?;
        }
        Ok(())
    }

    fn check_jacobi(&self) -> Result<()> {
        let g1 = self.layer(1).generators();
        let e = |i: usize| unit(g1, i);
        for a in 0..g1 {
            for b in a + 1..g1 {
                for cc in b + 1..g1 {
                    let mut total = vec![BigInt::zero(); self.layer(3).generators()];
                    for (x, y, z) in [(a, b, cc), (b, cc, a), (cc, a, b)] {
                        let xy = self.bracket_vec(1, &e(x), 1, &e(y));
                        let t = self.bracket_vec(2, &xy, 1, &e(z));
                        for (s, v) in total.iter_mut().zip(t) {
                            *s += v;
                        }
                    }
                    self.layer(3).reduce(&mut total);
                    if total.iter().any(|x| !x.is_zero()) {
                        return Err(Error::Validation(format!(
                            "Jacobi identity fails on {}, {}, {}",
                            self.generator_name(GenRef::new(1, a)),
                            self.generator_name(GenRef::new(1, b)),
                            self.generator_name(GenRef::new(1, cc))
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `[g, h]` as a coordinate vector in layer `g.layer + h.layer`.
    pub fn bracket(&self, g: GenRef, h: GenRef) -> Vec<BigInt> {
        let target = g.layer + h.layer;
        let len = if target <= self.class() {
            self.layer(target).generators()
        } else {
            0
        };
        for b in &self.brackets {
            let sign = if b.left == g && b.right == h {
                1
            } else if b.left == h && b.right == g {
                -1
            } else {
                continue;
            };
            if target > self.class() {
                break;
            }
            return b.value.iter().map(|&x| BigInt::from(sign * x)).collect();
        }
        vec![BigInt::zero(); len]
    }

    /// Bilinear extension of the bracket to vectors `u` in layer `p` and `v`
    /// in layer `q`.
    pub fn bracket_vec(&self, p: usize, u: &[BigInt], q: usize, v: &[BigInt]) -> Vec<BigInt> {
        let target = p + q;
        if target > self.class() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); self.layer(target).generators()];
        for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let br = self.bracket(GenRef::new(p, i), GenRef::new(q, j));
                for (o, x) in out.iter_mut().zip(br) {
                    *o += a * b * x;
                }
            }
        }
        self.layer(target).reduce(&mut out);
        out
    }

    /// Checks shapes, torsion compatibility and every structure constant
    /// `L_{p+q} [g, h] = [L_p g, L_q h]`.
    pub fn check_endo(&self, e: &TowerEndo) -> Result<()> {
        let c = self.class();
        if e.layer_matrices.len() != c {
            return Err(Error::Validation(format!(
                "{} layer matrices for a tower of class {c}",
                e.layer_matrices.len()
            )));
        }
        for (n, m) in e.layer_matrices.iter().enumerate() {
            let g = self.layers[n].generators();
            if m.rows() != g || m.cols() != g {
                return Err(Error::Validation(format!(
                    "layer {} matrix is {}x{}, expected {g}x{g}",
                    n + 1,
                    m.rows(),
                    m.cols()
                )));
            }
            let layer = &self.layers[n];
            for i in 0..g {
                let Some(d) = layer.order(i) else { continue };
                let mut col: Vec<BigInt> = m.column(i).iter().map(|x| x * d).collect();
                layer.reduce(&mut col);
                if col.iter().any(|x| !x.is_zero()) {
                    return Err(Error::Validation(format!(
                        "layer {} matrix does not respect the order {d} of {}",
                        n + 1,
                        self.generator_name(GenRef::new(n + 1, i))
                    )));
                }
            }
        }
        for p in 1..=c {
            for q in 1..=p.min(c - p) {
                let lp = &e.layer_matrices[p - 1];
                let lq = &e.layer_matrices[q - 1];
                let lt = &e.layer_matrices[p + q - 1];
                for i in 0..self.layer(p).generators() {
                    let start = if p == q { i + 1 } else { 0 };
                    for j in start..self.layer(q).generators() {
                        let (g, h) = (GenRef::new(p, i), GenRef::new(q, j));
                        let value = self.bracket(g, h);
                        let mut lhs = lt.mul_vec(&value)?;
                        self.layer(p + q).reduce(&mut lhs);
                        let rhs = self.bracket_vec(p, &lp.column(i), q, &lq.column(j));
                        if lhs != rhs {
                            return Err(Error::Validation(format!(
                                "structure constant [{}, {}] = {} violated: the layer maps give {} on one side and {} on the other",
                                self.generator_name(g),
                                self.generator_name(h),
                                self.format_vec(p + q, &value),
                                self.format_vec(p + q, &lhs),
                                self.format_vec(p + q, &rhs)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Derives the higher layer matrices forced by the structure constants
    /// from the abelianization matrix, then validates the result.
    pub fn derive_endo(&self, l1: &IntMatrix) -> Result<TowerEndo> {
        let c = self.class();
        let mut mats = vec![l1.clone()];
        for n in 2..=c {
            let g = self.layer(n).generators();
            let mut values = Vec::new();
            let mut images = Vec::new();
            for p in 1..=n / 2 {
                let q = n - p;
                for i in 0..self.layer(p).generators() {
                    let start = if p == q { i + 1 } else { 0 };
                    for j in start..self.layer(q).generators() {
                        let v = self.bracket(GenRef::new(p, i), GenRef::new(q, j));
                        if v.iter().all(Zero::is_zero) {
                            continue;
                        }
                        let lp = &mats[p - 1];
                        let lq = &mats[q - 1];
                        if lp.rows() != self.layer(p).generators() || lq.rows() != self.layer(q).generators() {
                            return Err(Error::Shape("abelianization matrix has the wrong size".into()));
                        }
                        values.push(v);
                        images.push(self.bracket_vec(p, &lp.column(i), q, &lq.column(j)));
                    }
                }
            }
            let a = IntMatrix::from_columns(g, &values)?;
            let b = IntMatrix::from_columns(g, &images)?;
            let mut ln = solve_right(&a, &b).map_err(|_| {
                Error::Precondition(format!(
                    "layer {n} of {} is not determined by the commutator table; supply its matrix",
                    self.name
                ))
            })?;
            let layer = self.layer(n);
            for (t, &d) in layer.torsion.iter().enumerate() {
                let row = layer.free_rank + t;
                for j in 0..g {
                    let v = ln.get(row, j).mod_floor(&BigInt::from(d));
                    ln.set(row, j, v);
                }
            }
            mats.push(ln);
        }
        let e = TowerEndo { layer_matrices: mats };
        self.check_endo(&e)?;
        Ok(e)
    }

    /// `t × Z^n`: `n` new free generators in layer 1 commuting with everything.
    pub fn product_with_zn(&self, n: usize) -> CentralTower {
        if n == 0 {
            return self.clone();
        }
        let old_free = self.layers[0].free_rank;
        let shift = |g: GenRef| {
            if g.layer == 1 && g.index >= old_free {
                GenRef::new(1, g.index + n)
            } else {
                g
            }
        };
        let mut layers = self.layers.clone();
        let l1 = &mut layers[0];
        if !l1.names.is_empty() {
            let extra = (1..=n).map(|i| format!("z{i}"));
            l1.names.splice(old_free..old_free, extra);
        }
        l1.free_rank += n;
        let brackets = self
            .brackets
            .iter()
            .map(|b| BracketRule {
                left: shift(b.left),
                right: shift(b.right),
                value: b.value.clone(),
            })
            .collect();
        CentralTower {
            name: format!("{} x Z^{n}", self.name),
            layers,
            brackets,
        }
    }
}

fn unit(len: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); len];
    v[i] = BigInt::from(1);
    v
}

fn rule(left: (usize, usize), right: (usize, usize), value: &[i64]) -> BracketRule {
    BracketRule {
        left: GenRef::new(left.0, left.1),
        right: GenRef::new(right.0, right.1),
        value: value.to_vec(),
    }
}

/// `<a, b, c | [a,c] = [b,c] = 1, [a,b] = c^r>`.
pub fn build_n_r(r: i64) -> Result<CentralTower> {
    if r == 0 {
        return Err(Error::Domain("r = 0 gives an abelian group, not a class-2 tower".into()));
    }
    CentralTower::new(
        format!("N_{r}"),
        vec![AbelianLayer::free(2, &["a", "b"]), AbelianLayer::free(1, &["c"])],
        vec![rule((1, 0), (1, 1), &[r])],
    )
}

/// Free nilpotent group of rank 4 and class 2 on `x, y, z, w` modulo
/// `[x,z], [x,w], [y,z]`.
pub fn build_q42() -> CentralTower {
    CentralTower::new(
        "Q42",
        vec![
            AbelianLayer::free(4, &["x", "y", "z", "w"]),
            AbelianLayer::free(3, &["[x,y]", "[y,w]", "[z,w]"]),
        ],
        vec![
            rule((1, 0), (1, 1), &[1, 0, 0]),
            rule((1, 1), (1, 3), &[0, 1, 0]),
            rule((1, 2), (1, 3), &[0, 0, 1]),
        ],
    )
    .expect("Q42 tower is valid")
}

/// `<x, y | Gamma_4, [B, y]>` with `B = [x, y]`: layers `Z^2, Z B, Z w1` with
/// `[B, x] = w1` and `[B, y] = 1`.
pub fn build_g53() -> CentralTower {
    CentralTower::new(
        "G",
        vec![
            AbelianLayer::free(2, &["x", "y"]),
            AbelianLayer::free(1, &["B"]),
            AbelianLayer::free(1, &["w1"]),
        ],
        vec![rule((1, 0), (1, 1), &[1]), rule((2, 0), (1, 0), &[1])],
    )
    .expect("G tower is valid")
}

/// Heisenberg group over `Z_m` as a two-layer tower `Z_m^2`, `Z_m`.
pub fn build_heisenberg_mod_tower(m: u64) -> Result<CentralTower> {
    if m < 2 {
        return Err(Error::Domain(format!("modulus {m} < 2")));
    }
    CentralTower::new(
        format!("Heis(Z_{m})"),
        vec![
            AbelianLayer {
                free_rank: 0,
                torsion: vec![m, m],
                names: vec!["a".into(), "b".into()],
            },
            AbelianLayer {
                free_rank: 0,
                torsion: vec![m],
                names: vec!["c".into()],
            },
        ],
        vec![rule((1, 0), (1, 1), &[1])],
    )
}

/// Free abelian group `Z^n` as a one-layer tower.
pub fn build_free_abelian(n: usize) -> CentralTower {
    CentralTower::new(format!("Z^{n}"), vec![AbelianLayer::free(n, &[])], Vec::new())
        .expect("free abelian tower is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[[i64; 2]]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn n_r_layers() {
        let t = build_n_r(2).unwrap();
        assert_eq!(t.layer_ranks(), vec![2, 1]);
        assert_eq!(t.hirsch_length(), 3);
        assert_eq!(t.bracket(GenRef::new(1, 0), GenRef::new(1, 1)), vec![BigInt::from(2)]);
        assert!(build_n_r(0).is_err());
        let e = t.derive_endo(&m(&[[2, 5], [1, 2]])).unwrap();
        assert_eq!(e.layer_matrices[1], IntMatrix::from_rows(&[[-1]]));
    }

    #[test]
    fn q42_structure() {
        let t = build_q42();
        assert_eq!(t.layer_ranks(), vec![4, 3]);
        assert!(t.bracket(GenRef::new(1, 0), GenRef::new(1, 2)).iter().all(Zero::is_zero));
        assert_eq!(
            t.bracket(GenRef::new(1, 0), GenRef::new(1, 1)),
            vec![BigInt::from(1), BigInt::zero(), BigInt::zero()]
        );
    }

    #[test]
    fn g53_forced_layers() {
        let t = build_g53();
        assert_eq!(t.layer_ranks(), vec![2, 1, 1]);
        // columns: x -> a x + b y, y -> d y
        let e = t.derive_endo(&m(&[[-1, 0], [3, -1]])).unwrap();
        assert_eq!(e.layer_matrices[1], IntMatrix::from_rows(&[[1]]));
        assert_eq!(e.layer_matrices[2], IntMatrix::from_rows(&[[-1]]));
        let err = t.derive_endo(&m(&[[1, 1], [0, 1]])).unwrap_err();
        assert!(err.to_string().contains("[B, y]"), "{err}");
    }

    #[test]
    fn products_with_free_factors() {
        let g = build_g53();
        assert_eq!(g.product_with_zn(0), g);
        let g3 = g.product_with_zn(3);
        assert_eq!(g3.hirsch_length(), 7);
        assert_eq!(g3.layer_ranks(), vec![5, 1, 1]);
        let bad = TowerEndo {
            layer_matrices: vec![IntMatrix::identity(4), IntMatrix::identity(1), IntMatrix::identity(1)],
        };
        assert!(g3.check_endo(&bad).is_err());
    }

    #[test]
    fn heisenberg_mod_tower() {
        let t = build_heisenberg_mod_tower(3).unwrap();
        let e = t.derive_endo(&m(&[[2, 0], [0, 2]])).unwrap();
        assert_eq!(e.layer_matrices[1], IntMatrix::from_rows(&[[1]]));
        assert!(build_heisenberg_mod_tower(1).is_err());
    }

    #[test]
    fn json_rejects_unknown_fields_and_bad_brackets() {
        let t = build_n_r(1).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<CentralTower>(&s).unwrap(), t);
        let bad = s.replace("\"name\"", "\"nom\"");
        assert!(serde_json::from_str::<CentralTower>(&bad).is_err());
        let beyond = r#"{"name":"t","layers":[{"free_rank":2}],"brackets":[{"left":{"layer":1,"index":0},"right":{"layer":1,"index":1},"value":[1]}]}"#;
        assert!(serde_json::from_str::<CentralTower>(beyond).is_err());
    }
}
