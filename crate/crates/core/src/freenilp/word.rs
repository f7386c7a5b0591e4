use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// One letter of a free-group word: generator index (0-based) and whether it
/// is inverted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

/// A freely reduced word in the free group of the given rank.
///
/// Text form: whitespace-separated letters `x1 x2 X1 X2`, capitals denoting
/// inverses, `1` or the empty string for the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity(rank: usize) -> Self {
        FreeWord {
            rank,
            letters: Vec::new(),
        }
    }

    /// Generator `x_{index+1}`.
    pub fn generator(rank: usize, index: usize) -> Result<Self> {
        Self::from_letters(rank, vec![Letter::new(index, false)])
    }

    pub fn from_letters(rank: usize, letters: Vec<Letter>) -> Result<Self> {
        if let Some(l) = letters.iter().find(|l| l.generator >= rank) {
            return Err(Error::Domain(format!(
                "generator x{} outside rank {rank}",
                l.generator + 1
            )));
        }
        let mut w = FreeWord {
            rank,
            letters: Vec::with_capacity(letters.len()),
        };
        w.extend(letters);
        Ok(w)
    }

    pub fn parse(rank: usize, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_whitespace() || c == '.' || c == '*' {
                i += 1;
                continue;
            }
            if c == '1' && !bytes.get(i + 1).is_some_and(u8::is_ascii_digit) {
                i += 1;
                continue;
            }
            let inverse = match c {
                'x' => false,
                'X' => true,
                _ => return Err(Error::Parse(format!("unexpected {c:?} in word {text:?}"))),
            };
            i += 1;
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let index: usize = text[start..i]
                .parse()
                .map_err(|_| Error::Parse(format!("missing generator index in {text:?}")))?;
            if index == 0 {
                return Err(Error::Parse(format!("generators are numbered from 1 in {text:?}")));
            }
            let mut power: i64 = 1;
            if bytes.get(i) == Some(&b'^') {
                i += 1;
                let start = i;
                if bytes.get(i) == Some(&b'-') {
                    i += 1;
                }
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                power = text[start..i]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {text:?}")))?;
            }
            let inverse = inverse ^ (power < 0);
            for _ in 0..power.unsigned_abs() {
                letters.push(Letter::new(index - 1, inverse));
            }
        }
        Self::from_letters(rank, letters)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inv()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    fn extend<I: IntoIterator<Item = Letter>>(&mut self, letters: I) {
        for l in letters {
            self.push(l);
        }
    }

    fn check_rank(&self, other: &FreeWord) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &FreeWord) -> Result<FreeWord> {
        self.check_rank(other)?;
        let mut out = self.clone();
        out.extend(other.letters.iter().copied());
        Ok(out)
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity(self.rank);
        for _ in 0..k.unsigned_abs() {
            out.extend(base.letters.iter().copied());
        }
        out
    }

    /// `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(a: &FreeWord, b: &FreeWord) -> Result<FreeWord> {
        a.check_rank(b)?;
        let mut out = a.clone();
        out.extend(b.letters.iter().copied());
        out.extend(a.inverse().letters);
        out.extend(b.inverse().letters);
        Ok(out)
    }

    /// Exponent sum of each generator: the image in the abelianization.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank];
        for l in &self.letters {
            v[l.generator] += if l.inverse { -1 } else { 1 };
        }
        v
    }

    /// Replaces every generator by the corresponding word of `images`.
    pub fn substitute(&self, images: &[FreeWord]) -> Result<FreeWord> {
        if images.len() != self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: images.len(),
            });
        }
        let target = images.first().map_or(self.rank, FreeWord::rank);
        let mut out = FreeWord::identity(target);
        for l in &self.letters {
            let img = &images[l.generator];
            if img.rank != target {
                return Err(Error::RankMismatch {
                    left: target,
                    right: img.rank,
                });
            }
            if l.inverse {
                out.extend(img.letters.iter().rev().map(|x| x.inv()));
            } else {
                out.extend(img.letters.iter().copied());
            }
        }
        Ok(out)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", if l.inverse { 'X' } else { 'x' }, l.generator + 1)?;
        }
        Ok(())
    }
}

impl Serialize for FreeWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Common rank-2 words: `x = x1`, `y = x2`, `B = [x, y]` and the commutators
/// built from them.
pub mod rank2 {
    use super::FreeWord;

    pub fn x() -> FreeWord {
        FreeWord::generator(2, 0).unwrap()
    }

    pub fn y() -> FreeWord {
        FreeWord::generator(2, 1).unwrap()
    }

    pub fn comm(a: &FreeWord, b: &FreeWord) -> FreeWord {
        FreeWord::commutator(a, b).unwrap()
    }

    /// `B = [x, y]`.
    pub fn b() -> FreeWord {
        comm(&x(), &y())
    }

    /// `w = [[B, x], [B, y]]`, a nontrivial element of the sixth layer.
    pub fn w() -> FreeWord {
        let b = b();
        comm(&comm(&b, &x()), &comm(&b, &y()))
    }

    /// `w1 = [B, w]`, a nontrivial element of the eighth layer fixed by every
    /// automorphism whose abelianization has determinant -1.
    pub fn w1() -> FreeWord {
        comm(&b(), &w())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let w = FreeWord::parse(2, "x1 x2 X1 X2").unwrap();
        assert_eq!(w, rank2::b());
        assert_eq!(w.to_string(), "x1 x2 X1 X2");
        assert_eq!(FreeWord::parse(2, "x1x2X2").unwrap().to_string(), "x1");
        assert!(FreeWord::parse(2, "1").unwrap().is_empty());
        assert!(FreeWord::parse(2, "x3").is_err());
        assert!(FreeWord::parse(2, "y1").is_err());
        assert!(FreeWord::parse(2, "x0").is_err());
        assert_eq!(FreeWord::parse(2, "x1^2 x2^-1").unwrap().to_string(), "x1 x1 X2");
        assert_eq!(FreeWord::parse(2, "X1^-2").unwrap().to_string(), "x1 x1");
        assert!(FreeWord::parse(2, "x1^").is_err());
    }

    #[test]
    fn free_reduction() {
        let x = rank2::x();
        assert!(x.mul(&x.inverse()).unwrap().is_empty());
        assert_eq!(x.pow(-3).len(), 3);
        assert_eq!(rank2::w1().exponent_sums(), vec![0, 0]);
    }

    #[test]
    fn substitution() {
        let images = vec![
            FreeWord::parse(2, "x1 x1 x2").unwrap(),
            FreeWord::parse(2, "x1 x1 x1 x1 x1 x2 x2").unwrap(),
        ];
        let b = rank2::b().substitute(&images).unwrap();
        assert_eq!(b.exponent_sums(), vec![0, 0]);
        assert_eq!(rank2::x().inverse().substitute(&images).unwrap().exponent_sums(), vec![-2, -1]);
    }
}
