use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A Reidemeister number or cokernel order: a positive natural number or
/// infinity. Infinity absorbs under multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReidValue {
    Finite(BigUint),
    Infinite,
}

impl ReidValue {
    pub fn finite(n: u64) -> Self {
        ReidValue::Finite(BigUint::from(n))
    }

    pub fn one() -> Self {
        ReidValue::Finite(BigUint::one())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ReidValue::Infinite)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    pub fn as_finite(&self) -> Option<&BigUint> {
        match self {
            ReidValue::Finite(n) => Some(n),
            ReidValue::Infinite => None,
        }
    }

    pub fn product<'a, I: IntoIterator<Item = &'a ReidValue>>(values: I) -> ReidValue {
        values
            .into_iter()
            .fold(ReidValue::one(), |acc, v| &acc * v)
    }
}

impl Mul for &ReidValue {
    type Output = ReidValue;

    fn mul(self, rhs: &ReidValue) -> ReidValue {
        match (self, rhs) {
            (ReidValue::Finite(a), ReidValue::Finite(b)) => ReidValue::Finite(a * b),
            _ => ReidValue::Infinite,
        }
    }
}

impl Mul for ReidValue {
    type Output = ReidValue;

    fn mul(self, rhs: ReidValue) -> ReidValue {
        &self * &rhs
    }
}

impl fmt::Display for ReidValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReidValue::Finite(n) => write!(f, "{n}"),
            ReidValue::Infinite => f.write_str("infinity"),
        }
    }
}

impl FromStr for ReidValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("infinity") || s.eq_ignore_ascii_case("inf") {
            return Ok(ReidValue::Infinite);
        }
        let n: BigUint = s
            .parse()
            .map_err(|_| Error::Parse(format!("not a Reidemeister value: {s:?}")))?;
        if n.is_zero() {
            return Err(Error::Parse("Reidemeister values are at least 1".into()));
        }
        Ok(ReidValue::Finite(n))
    }
}

impl Serialize for ReidValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ReidValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Num(u64),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Num(0) => Err(serde::de::Error::custom("Reidemeister values are at least 1")),
            Raw::Num(n) => Ok(ReidValue::finite(n)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_absorbs() {
        let eight = ReidValue::finite(4) * ReidValue::finite(2);
        assert_eq!(eight, ReidValue::finite(8));
        assert_eq!(eight.clone() * ReidValue::Infinite, ReidValue::Infinite);
        assert_eq!(ReidValue::product(&[ReidValue::finite(3), ReidValue::Infinite]), ReidValue::Infinite);
    }

    #[test]
    fn json_form() {
        let v: ReidValue = serde_json::from_str("\"infinity\"").unwrap();
        assert!(v.is_infinite());
        assert_eq!(serde_json::to_string(&ReidValue::finite(8)).unwrap(), "\"8\"");
        assert!("0".parse::<ReidValue>().is_err());
    }
}
