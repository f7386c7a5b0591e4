use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `x^m y^k` in the Klein bottle group `<x, y | x y x y^-1>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KleinElement {
    pub m: i64,
    pub k: i64,
}

fn parity_sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl KleinElement {
    pub const IDENTITY: KleinElement = KleinElement { m: 0, k: 0 };
    pub const X: KleinElement = KleinElement { m: 1, k: 0 };
    pub const Y: KleinElement = KleinElement { m: 0, k: 1 };

    pub fn new(m: i64, k: i64) -> Self {
        KleinElement { m, k }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, o: KleinElement) -> KleinElement {
        KleinElement {
            m: self.m + parity_sign(self.k) * o.m,
            k: self.k + o.k,
        }
    }

    pub fn inverse(self) -> KleinElement {
        KleinElement {
            m: -parity_sign(self.k) * self.m,
            k: -self.k,
        }
    }

    pub fn pow(self, e: i64) -> KleinElement {
        let base = if e < 0 { self.inverse() } else { self };
        (0..e.unsigned_abs()).fold(Self::IDENTITY, |acc, _| acc.mul(base))
    }
}

impl fmt::Display for KleinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.m, self.k) {
            (0, 0) => f.write_str("1"),
            (m, 0) => write!(f, "x^{m}"),
            (0, k) => write!(f, "y^{k}"),
            (m, k) => write!(f, "x^{m} y^{k}"),
        }
    }
}

/// The four sign patterns of a Klein bottle automorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KleinCase {
    /// `eps = 1, delta = 1`
    A,
    /// `eps = 1, delta = -1`
    B,
    /// `eps = -1, delta = 1`
    C,
    /// `eps = -1, delta = -1`
    D,
}

impl KleinCase {
    pub const ALL: [KleinCase; 4] = [KleinCase::A, KleinCase::B, KleinCase::C, KleinCase::D];

    pub fn signs(self) -> (i64, i64) {
        match self {
            KleinCase::A => (1, 1),
            KleinCase::B => (1, -1),
            KleinCase::C => (-1, 1),
            KleinCase::D => (-1, -1),
        }
    }

    pub fn letter(self) -> char {
        match self {
            KleinCase::A => 'a',
            KleinCase::B => 'b',
            KleinCase::C => 'c',
            KleinCase::D => 'd',
        }
    }
}

/// Automorphism `x -> x^eps`, `y -> x^r y^delta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawKleinAut")]
pub struct KleinAut {
    pub eps: i64,
    pub delta: i64,
    pub r: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawKleinAut {
    eps: i64,
    delta: i64,
    r: i64,
}

impl TryFrom<RawKleinAut> for KleinAut {
    type Error = Error;

    fn try_from(raw: RawKleinAut) -> Result<Self> {
        KleinAut::new(raw.eps, raw.delta, raw.r)
    }
}

impl KleinAut {
    pub const IDENTITY: KleinAut = KleinAut {
        eps: 1,
        delta: 1,
        r: 0,
    };

    pub fn new(eps: i64, delta: i64, r: i64) -> Result<Self> {
        if eps.abs() != 1 || delta.abs() != 1 {
            return Err(Error::Domain(format!(
                "eps and delta must be 1 or -1, got eps={eps} delta={delta}"
            )));
        }
        Ok(KleinAut { eps, delta, r })
    }

    pub fn from_case(case: KleinCase, r: i64) -> Self {
        let (eps, delta) = case.signs();
        KleinAut { eps, delta, r }
    }

    pub fn case(self) -> KleinCase {
        match (self.eps, self.delta) {
            (1, 1) => KleinCase::A,
            (1, _) => KleinCase::B,
            (_, 1) => KleinCase::C,
            _ => KleinCase::D,
        }
    }

    /// `x^m y^k -> x^(eps m + r [k odd]) y^(delta k)`.
    pub fn apply(self, g: KleinElement) -> KleinElement {
        let odd = g.k.rem_euclid(2) == 1;
        KleinElement {
            m: self.eps * g.m + if odd { self.r } else { 0 },
            k: self.delta * g.k,
        }
    }

    /// `self ∘ other`.
    pub fn compose(self, other: KleinAut) -> KleinAut {
        KleinAut {
            eps: self.eps * other.eps,
            delta: self.delta * other.delta,
            r: self.r + self.eps * other.r,
        }
    }

    pub fn inverse(self) -> KleinAut {
        KleinAut {
            eps: self.eps,
            delta: self.delta,
            r: -self.eps * self.r,
        }
    }
}

impl fmt::Display for KleinAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},r={}", self.case().letter(), self.r)
    }
}

/// Accepts `b,r=2`, `b` (r = 0) or `eps=1,delta=-1,r=2`.
impl FromStr for KleinAut {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut case = None;
        let (mut eps, mut delta, mut r) = (None, None, 0i64);
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let int = |v: &str| {
                v.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad integer {v:?} in {s:?}")))
            };
            match part.split_once('=') {
                Some(("r", v)) => r = int(v)?,
                Some(("eps", v)) => eps = Some(int(v)?),
                Some(("delta", v)) => delta = Some(int(v)?),
                None if part.len() == 1 => {
                    case = Some(match part {
                        "a" => KleinCase::A,
                        "b" => KleinCase::B,
                        "c" => KleinCase::C,
                        "d" => KleinCase::D,
                        _ => return Err(Error::Parse(format!("unknown case {part:?}"))),
                    })
                }
                _ => return Err(Error::Parse(format!("unexpected {part:?} in Klein automorphism {s:?}"))),
            }
        }
        match (case, eps, delta) {
            (Some(c), None, None) => Ok(KleinAut::from_case(c, r)),
            (None, Some(e), Some(d)) => KleinAut::new(e, d, r),
            _ => Err(Error::Parse(format!(
                "give either a case letter or both eps and delta in {s:?}"
            ))),
        }
    }
}
