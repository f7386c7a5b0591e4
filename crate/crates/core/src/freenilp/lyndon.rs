use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use super::series::{Monomial, Polynomial};
use crate::error::{Error, Result};

const MAX_WITT_DEGREE: u64 = 64;
const MAX_BASIS_SIZE: u64 = 200_000;

fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Rank of `Gamma_n / Gamma_{n+1}` of the free group of rank `r`:
/// `(1/n) sum_{d | n} mu(d) r^{n/d}`.
pub fn witt_rank(r: u64, n: u64) -> Result<BigUint> {
    if r == 0 {
        return Err(Error::Domain("rank must be at least 1".into()));
    }
    if n == 0 {
        return Err(Error::Domain("layer degree must be at least 1".into()));
    }
    if n > MAX_WITT_DEGREE {
        return Err(Error::TooLarge(format!("layer degree {n} exceeds {MAX_WITT_DEGREE}")));
    }
    let base = BigInt::from(r);
    let mut sum = BigInt::zero();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        match mobius(d) {
            0 => {}
            s => sum += BigInt::from(s) * num_traits::pow(base.clone(), (n / d) as usize),
        }
    }
    let q = sum / BigInt::from(n);
    Ok(q.to_biguint().expect("Witt rank is non-negative"))
}

/// Hirsch length of `F_r / Gamma_{c+1}`.
pub fn hirsch_length_free_nilpotent(r: u64, c: u64) -> Result<BigUint> {
    if c == 0 {
        return Err(Error::Domain("class must be at least 1".into()));
    }
    (1..=c).try_fold(BigUint::zero(), |acc, n| Ok(acc + witt_rank(r, n)?))
}

/// All Lyndon words over `0..rank` of length at most `max_len`, in
/// lexicographic order (Duval's algorithm).
pub fn lyndon_words_up_to(rank: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if rank == 0 || max_len == 0 {
        return out;
    }
    let mut w: Vec<usize> = vec![0];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&(rank - 1)) {
            w.pop();
        }
        match w.last_mut() {
            None => break,
            Some(last) => *last += 1,
        }
    }
    out
}

pub fn is_lyndon(w: &[usize]) -> bool {
    // Equivalent to being smaller than every proper rotation.
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Standard factorization `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[usize]) -> Option<(&[usize], &[usize])> {
    (1..w.len())
        .find(|&i| is_lyndon(&w[i..]))
        .map(|i| (&w[..i], &w[i..]))
}

/// Bracketing tree of a Lyndon word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Bracket {
    Letter(usize),
    Pair(Box<Bracket>, Box<Bracket>),
}

impl Bracket {
    pub fn standard(w: &[usize]) -> Bracket {
        match standard_factorization(w) {
            None => Bracket::Letter(w[0]),
            Some((u, v)) => Bracket::Pair(Box::new(Bracket::standard(u)), Box::new(Bracket::standard(v))),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Bracket::Letter(_) => 1,
            Bracket::Pair(a, b) => a.degree() + b.degree(),
        }
    }

    /// Evaluates the tree with `leaf` for letters and `pair` for brackets.
    pub fn fold<T>(&self, leaf: &mut impl FnMut(usize) -> T, pair: &mut impl FnMut(T, T) -> T) -> T {
        match self {
            Bracket::Letter(i) => leaf(*i),
            Bracket::Pair(a, b) => {
                let x = a.fold(leaf, pair);
                let y = b.fold(leaf, pair);
                pair(x, y)
            }
        }
    }
}

pub(crate) fn poly_mul(a: &Polynomial, b: &Polynomial, rank: usize) -> Polynomial {
    let mut out = Polynomial::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let e = out.entry(ma.concat(*mb, rank)).or_insert_with(BigInt::zero);
            *e += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub(crate) fn poly_add_scaled(acc: &mut Polynomial, p: &Polynomial, scale: &BigInt) {
    for (m, c) in p {
        let e = acc.entry(*m).or_insert_with(BigInt::zero);
        *e += c * scale;
    }
    acc.retain(|_, c| !c.is_zero());
}

/// Lie bracket `ab - ba` of noncommutative polynomials.
pub fn lie_bracket(a: &Polynomial, b: &Polynomial, rank: usize) -> Polynomial {
    let mut out = poly_mul(a, b, rank);
    poly_add_scaled(&mut out, &poly_mul(b, a, rank), &-BigInt::one());
    out
}

/// Lyndon basis of one layer `Gamma_n / Gamma_{n+1}` together with the Lie
/// polynomials of the standard bracketings.
#[derive(Clone, Debug)]
pub struct LyndonBasis {
    rank: usize,
    degree: usize,
    words: Vec<Vec<usize>>,
    brackets: Vec<Bracket>,
    polys: Vec<Polynomial>,
}

impl LyndonBasis {
    pub fn new(rank: usize, degree: usize) -> Result<Self> {
        let size = witt_rank(rank as u64, degree as u64)?;
        if size > BigUint::from(MAX_BASIS_SIZE) {
            return Err(Error::TooLarge(format!(
                "layer {degree} of rank {rank} has {size} basis elements"
            )));
        }
        let all = lyndon_words_up_to(rank, degree);
        let mut cache: HashMap<Vec<usize>, Polynomial> = HashMap::new();
        let mut words = Vec::new();
        let mut polys = Vec::new();
        for w in all.iter().filter(|w| w.len() == degree) {
            polys.push(lie_poly(w, rank, &mut cache));
            words.push(w.clone());
        }
        let brackets = words.iter().map(|w| Bracket::standard(w)).collect();
        Ok(LyndonBasis {
            rank,
            degree,
            words,
            brackets,
            polys,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    pub fn brackets(&self) -> &[Bracket] {
        &self.brackets
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    /// Words rendered over `x1, x2, ...` (e.g. `x1x2x2`).
    pub fn word_labels(&self) -> Vec<String> {
        self.words
            .iter()
            .map(|w| w.iter().map(|i| format!("x{}", i + 1)).collect())
            .collect()
    }

    /// Coordinates of a homogeneous degree-`n` Lie element. Ascending
    /// triangular elimination; a nonzero remainder means the input is not a
    /// Lie element.
    pub fn coordinates(&self, element: &Polynomial) -> Result<Vec<BigInt>> {
        let mut rest = element.clone();
        if let Some(m) = rest.keys().find(|m| m.degree() != self.degree) {
            return Err(Error::Precondition(format!(
                "term of degree {} in a degree-{} layer element",
                m.degree(),
                self.degree
            )));
        }
        let mut coords = Vec::with_capacity(self.words.len());
        for (w, p) in self.words.iter().zip(&self.polys) {
            let key = Monomial::from_letters(self.rank, w);
            let c = rest.get(&key).cloned().unwrap_or_default();
            if !c.is_zero() {
                poly_add_scaled(&mut rest, p, &-c.clone());
            }
            coords.push(c);
        }
        if !rest.is_empty() {
            return Err(Error::Precondition(
                "homogeneous component is not a Lie element".into(),
            ));
        }
        Ok(coords)
    }

    /// Lie polynomial of a coordinate vector.
    pub fn element(&self, coords: &[BigInt]) -> Polynomial {
        let mut out = Polynomial::new();
        for (c, p) in coords.iter().zip(&self.polys) {
            if !c.is_zero() {
                poly_add_scaled(&mut out, p, c);
            }
        }
        out
    }
}

fn lie_poly(w: &[usize], rank: usize, cache: &mut HashMap<Vec<usize>, Polynomial>) -> Polynomial {
    if let Some(p) = cache.get(w) {
        return p.clone();
    }
    let p = match standard_factorization(w) {
        None => Polynomial::from([(Monomial::letter(rank, w[0]), BigInt::one())]),
        Some((u, v)) => {
            let pu = lie_poly(u, rank, cache);
            let pv = lie_poly(v, rank, cache);
            lie_bracket(&pu, &pv, rank)
        }
    };
    cache.insert(w.to_vec(), p.clone());
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_table_rank_two() {
        let got: Vec<u64> = (1..=8)
            .map(|n| witt_rank(2, n).unwrap().try_into().unwrap())
            .collect();
        assert_eq!(got, vec![2, 1, 2, 3, 6, 9, 18, 30]);
        assert_eq!(witt_rank(1, 2).unwrap(), BigUint::zero());
        assert!(matches!(witt_rank(2, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn hirsch_lengths() {
        assert_eq!(hirsch_length_free_nilpotent(2, 2).unwrap(), BigUint::from(3u8));
        assert_eq!(hirsch_length_free_nilpotent(2, 3).unwrap(), BigUint::from(5u8));
        assert_eq!(hirsch_length_free_nilpotent(2, 8).unwrap(), BigUint::from(71u8));
    }

    #[test]
    fn lyndon_counts_match_witt() {
        for r in 1..=4usize {
            let words = lyndon_words_up_to(r, 8);
            for n in 1..=8usize {
                let count = words.iter().filter(|w| w.len() == n).count();
                assert_eq!(BigUint::from(count), witt_rank(r as u64, n as u64).unwrap(), "r={r} n={n}");
            }
            assert!(words.windows(2).all(|p| p[0] < p[1]));
            assert!(words.iter().all(|w| is_lyndon(w)));
        }
    }

    #[test]
    fn standard_bracketing_is_unitriangular() {
        let basis = LyndonBasis::new(2, 5).unwrap();
        for (w, p) in basis.words().iter().zip(basis.polys()) {
            let (lead, c) = p.iter().next().unwrap();
            assert_eq!(lead.letters(2), *w);
            assert!(c.is_one());
        }
    }

    #[test]
    fn factorization_examples() {
        assert_eq!(standard_factorization(&[0, 1, 1]), Some((&[0, 1][..], &[1][..])));
        assert_eq!(standard_factorization(&[0, 0, 1]), Some((&[0][..], &[0, 1][..])));
        assert_eq!(
            Bracket::standard(&[0, 1]),
            Bracket::Pair(Box::new(Bracket::Letter(0)), Box::new(Bracket::Letter(1)))
        );
    }
}
