use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `(t^j, eps)` in the infinite dihedral group `Z ⋊ Z_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DihedralElement {
    pub j: i64,
    pub eps: u8,
}

impl DihedralElement {
    pub const IDENTITY: DihedralElement = DihedralElement { j: 0, eps: 0 };

    pub fn new(j: i64, eps: u8) -> Self {
        DihedralElement { j, eps: eps % 2 }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, o: DihedralElement) -> DihedralElement {
        let sign = if self.eps == 0 { 1 } else { -1 };
        DihedralElement {
            j: self.j + sign * o.j,
            eps: (self.eps + o.eps) % 2,
        }
    }

    pub fn inverse(self) -> DihedralElement {
        if self.eps == 0 {
            DihedralElement { j: -self.j, eps: 0 }
        } else {
            self
        }
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(t^{},{})", self.j, self.eps)
    }
}

/// Automorphism `(t^j, eps) -> (t^(sign j + eps n), eps)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDihedralAut")]
pub struct DihedralAut {
    pub sign: i64,
    pub n: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDihedralAut {
    sign: i64,
    n: i64,
}

impl TryFrom<RawDihedralAut> for DihedralAut {
    type Error = Error;

    fn try_from(raw: RawDihedralAut) -> Result<Self> {
        DihedralAut::new(raw.sign, raw.n)
    }
}

impl DihedralAut {
    pub fn new(sign: i64, n: i64) -> Result<Self> {
        if sign.abs() != 1 {
            return Err(Error::Domain(format!("sign must be 1 or -1, got {sign}")));
        }
        Ok(DihedralAut { sign, n })
    }

    pub fn apply(self, g: DihedralElement) -> DihedralElement {
        DihedralElement {
            j: self.sign * g.j + g.eps as i64 * self.n,
            eps: g.eps,
        }
    }

    /// `self ∘ other`.
    pub fn compose(self, other: DihedralAut) -> DihedralAut {
        DihedralAut {
            sign: self.sign * other.sign,
            n: self.sign * other.n + self.n,
        }
    }
}

impl fmt::Display for DihedralAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sign={},n={}", self.sign, self.n)
    }
}

/// Accepts `sign=-1,n=5`.
impl FromStr for DihedralAut {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (mut sign, mut n) = (None, 0i64);
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value in {s:?}")))?;
            let v: i64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer {v:?} in {s:?}")))?;
            match key.trim() {
                "sign" => sign = Some(v),
                "n" => n = v,
                other => return Err(Error::Parse(format!("unknown key {other:?} in {s:?}"))),
            }
        }
        let sign = sign.ok_or_else(|| Error::Parse(format!("missing sign in {s:?}")))?;
        DihedralAut::new(sign, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflections_are_involutions() {
        let r = DihedralElement::new(4, 1);
        assert_eq!(r.mul(r), DihedralElement::IDENTITY);
        let t = DihedralElement::new(3, 0);
        assert_eq!(t.mul(t.inverse()), DihedralElement::IDENTITY);
    }

    #[test]
    fn apply_examples() {
        let a = DihedralAut::new(-1, 0).unwrap();
        assert_eq!(a.apply(DihedralElement::new(5, 0)), DihedralElement::new(-5, 0));
        let b = DihedralAut::new(-1, 7).unwrap();
        assert_eq!(b.apply(DihedralElement::new(2, 1)), DihedralElement::new(5, 1));
    }

    #[test]
    fn apply_is_a_homomorphism() {
        let elems: Vec<_> = (-3..=3)
            .flat_map(|j| [DihedralElement::new(j, 0), DihedralElement::new(j, 1)])
            .collect();
        for sign in [1, -1] {
            for n in -2..=2 {
                let a = DihedralAut::new(sign, n).unwrap();
                for &g in &elems {
                    for &h in &elems {
                        assert_eq!(a.apply(g.mul(h)), a.apply(g).mul(a.apply(h)));
                    }
                }
                let b = DihedralAut::new(-sign, n + 1).unwrap();
                for &g in &elems {
                    assert_eq!(a.compose(b).apply(g), a.apply(b.apply(g)));
                }
            }
        }
        assert_eq!("sign=-1,n=5".parse::<DihedralAut>().unwrap(), DihedralAut::new(-1, 5).unwrap());
    }
}
