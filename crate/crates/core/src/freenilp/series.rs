use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::word::FreeWord;
use crate::error::{Error, Result};

/// A monomial `X_{i_1} ... X_{i_len}`, packed as base-`rank` digits. The
/// derived order is degree first, then lexicographic within a degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    len: u8,
    code: u64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { len: 0, code: 0 };

    pub fn degree(self) -> usize {
        self.len as usize
    }

    pub fn letter(rank: usize, i: usize) -> Monomial {
        debug_assert!(i < rank);
        Monomial {
            len: 1,
            code: i as u64,
        }
    }

    pub fn from_letters(rank: usize, letters: &[usize]) -> Monomial {
        let code = letters
            .iter()
            .fold(0u64, |acc, &l| acc * rank as u64 + l as u64);
        Monomial {
            len: letters.len() as u8,
            code,
        }
    }

    pub fn letters(self, rank: usize) -> Vec<usize> {
        let mut out = vec![0; self.len as usize];
        let mut c = self.code;
        for slot in out.iter_mut().rev() {
            *slot = (c % rank as u64) as usize;
            c /= rank as u64;
        }
        out
    }

    pub fn concat(self, other: Monomial, rank: usize) -> Monomial {
        Monomial {
            len: self.len + other.len,
            code: self.code * (rank as u64).pow(other.len as u32) + other.code,
        }
    }
}

/// Homogeneous or mixed linear combination of monomials.
pub type Polynomial = BTreeMap<Monomial, BigInt>;

/// Element of `Z<<X_1..X_r>>` truncated above degree `cap`. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    rank: usize,
    cap: usize,
    terms: Polynomial,
}

/// Largest supported number of monomials, `sum_{d<=cap} rank^d`.
const MAX_MONOMIALS: u128 = 1 << 22;

fn check_size(rank: usize, cap: usize) -> Result<()> {
    if rank == 0 {
        return Err(Error::Domain("series need at least one variable".into()));
    }
    let total: u128 = (0..=cap as u32).map(|d| (rank as u128).pow(d)).sum();
    if cap > 63 || total > MAX_MONOMIALS {
        return Err(Error::TooLarge(format!(
            "rank {rank} with degree cap {cap} has {total} monomials"
        )));
    }
    Ok(())
}

impl TruncSeries {
    pub fn zero(rank: usize, cap: usize) -> Result<Self> {
        check_size(rank, cap)?;
        Ok(TruncSeries {
            rank,
            cap,
            terms: Polynomial::new(),
        })
    }

    pub fn one(rank: usize, cap: usize) -> Result<Self> {
        let mut s = Self::zero(rank, cap)?;
        s.terms.insert(Monomial::ONE, BigInt::one());
        Ok(s)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE).is_some_and(One::is_one)
    }

    pub fn coefficient(&self, letters: &[usize]) -> BigInt {
        self.terms
            .get(&Monomial::from_letters(self.rank, letters))
            .cloned()
            .unwrap_or_default()
    }

    /// Nonzero terms as (word, coefficient), degree-major then lexicographic.
    pub fn coefficients(&self) -> impl Iterator<Item = (Vec<usize>, &BigInt)> + '_ {
        self.terms.iter().map(|(m, c)| (m.letters(self.rank), c))
    }

    pub fn terms(&self) -> &Polynomial {
        &self.terms
    }

    /// Degree-`n` homogeneous component.
    pub fn homogeneous_part(&self, n: usize) -> Polynomial {
        let lo = Monomial { len: n as u8, code: 0 };
        let hi = Monomial {
            len: n as u8 + 1,
            code: 0,
        };
        self.terms
            .range(lo..hi)
            .map(|(m, c)| (*m, c.clone()))
            .collect()
    }

    /// Smallest degree >= 1 carrying a nonzero coefficient.
    pub fn min_positive_degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|m| m.degree())
            .find(|&d| d >= 1)
    }

    fn add_term(terms: &mut Polynomial, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &TruncSeries) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        if self.cap != other.cap {
            return Err(Error::CapMismatch {
                left: self.cap,
                right: other.cap,
            });
        }
        Ok(())
    }

    /// Truncated product.
    pub fn mul(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_compatible(other)?;
        let mut out = Polynomial::new();
        // Group the right factor by degree so the truncation prunes whole blocks.
        let mut by_degree: Vec<Vec<(Monomial, &BigInt)>> = vec![Vec::new(); self.cap + 1];
        for (m, c) in &other.terms {
            by_degree[m.degree()].push((*m, c));
        }
        for (ma, ca) in &self.terms {
            let room = self.cap - ma.degree();
            for block in &by_degree[..=room] {
                for (mb, cb) in block {
                    Self::add_term(&mut out, ma.concat(*mb, self.rank), ca * *cb);
                }
            }
        }
        Ok(TruncSeries {
            rank: self.rank,
            cap: self.cap,
            terms: out,
        })
    }

    pub fn add(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_compatible(other)?;
        let mut out = self.terms.clone();
        for (m, c) in &other.terms {
            Self::add_term(&mut out, *m, c.clone());
        }
        Ok(TruncSeries { terms: out, ..*self })
    }

    /// Right multiplication by `1 + X_i` (or its inverse `sum (-X_i)^k`).
    pub fn mul_letter(&self, generator: usize, inverse: bool) -> TruncSeries {
        let x = Monomial::letter(self.rank, generator);
        let mut out = self.terms.clone();
        for (m, c) in &self.terms {
            let mut mono = *m;
            let mut coeff = c.clone();
            while mono.degree() < self.cap {
                mono = mono.concat(x, self.rank);
                if inverse {
                    coeff = -coeff;
                }
                Self::add_term(&mut out, mono, coeff.clone());
                if !inverse {
                    break;
                }
            }
        }
        TruncSeries { terms: out, ..*self }
    }

    /// Inverse of a series with constant term 1: `sum_k (1 - s)^k`.
    pub fn inverse(&self) -> Result<TruncSeries> {
        if !self.terms.get(&Monomial::ONE).is_some_and(One::is_one) {
            return Err(Error::Precondition("series inverse needs constant term 1".into()));
        }
        let one = TruncSeries::one(self.rank, self.cap)?;
        let mut t = self.clone();
        t.terms.remove(&Monomial::ONE);
        let neg_t = TruncSeries {
            terms: t.terms.iter().map(|(m, c)| (*m, -c)).collect(),
            ..*self
        };
        let mut acc = one.clone();
        let mut power = one;
        for _ in 0..self.cap {
            power = power.mul(&neg_t)?;
            if power.terms.is_empty() {
                break;
            }
            acc = acc.add(&power)?;
        }
        Ok(acc)
    }
}

/// Magnus image of a word: `x_i -> 1 + X_i`, truncated above `cap`.
pub fn magnus_expand(w: &FreeWord, cap: usize) -> Result<TruncSeries> {
    if cap == 0 {
        return Err(Error::Domain("degree cap must be at least 1".into()));
    }
    let mut s = TruncSeries::one(w.rank().max(1), cap)?;
    for l in w.letters() {
        s = s.mul_letter(l.generator, l.inverse);
    }
    Ok(s)
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries(rank={}, cap={}) {}", self.rank, self.cap, self)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m.degree() == 0 {
                write!(f, "{c}")?;
                continue;
            }
            if !c.is_one() {
                write!(f, "{c}*")?;
            }
            for l in m.letters(self.rank) {
                write!(f, "X{}", l + 1)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freenilp::word::rank2;

    #[test]
    fn single_letters() {
        let s = magnus_expand(&rank2::x(), 4).unwrap();
        assert_eq!(s.to_string(), "1 + X1");
        let inv = magnus_expand(&rank2::x().inverse(), 3).unwrap();
        assert_eq!(inv.coefficient(&[0, 0, 0]), BigInt::from(-1));
        assert!(magnus_expand(&rank2::x().mul(&rank2::x().inverse()).unwrap(), 5).unwrap().is_one());
    }

    #[test]
    fn commutator_leading_term() {
        let s = magnus_expand(&rank2::b(), 4).unwrap();
        assert_eq!(s.min_positive_degree(), Some(2));
        assert_eq!(s.coefficient(&[0, 1]), BigInt::one());
        assert_eq!(s.coefficient(&[1, 0]), BigInt::from(-1));
        assert_eq!(s.homogeneous_part(2).len(), 2);
    }

    #[test]
    fn inverse_matches_inverse_word() {
        let w = FreeWord::parse(2, "x1 x1 x2 X1").unwrap();
        let s = magnus_expand(&w, 5).unwrap();
        assert_eq!(s.inverse().unwrap(), magnus_expand(&w.inverse(), 5).unwrap());
        let prod = s.mul(&s.inverse().unwrap()).unwrap();
        assert!(prod.is_one());
    }

    #[test]
    fn mismatched_caps_are_rejected() {
        let a = magnus_expand(&rank2::x(), 3).unwrap();
        let b = magnus_expand(&rank2::x(), 4).unwrap();
        assert!(matches!(a.mul(&b), Err(Error::CapMismatch { .. })));
    }
}
