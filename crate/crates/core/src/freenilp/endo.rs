use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::word::{FreeWord, Letter};
use crate::error::{Error, Result};
use crate::exactla::IntMatrix;

/// Endomorphism of a free (nilpotent) group given by generator images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawEndo", into = "RawEndo")]
pub struct EndoSpec {
    rank: usize,
    images: Vec<FreeWord>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEndo {
    rank: usize,
    images: Vec<String>,
}

impl TryFrom<RawEndo> for EndoSpec {
    type Error = Error;

    fn try_from(raw: RawEndo) -> Result<Self> {
        let images = raw
            .images
            .iter()
            .map(|s| FreeWord::parse(raw.rank, s))
            .collect::<Result<Vec<_>>>()?;
        EndoSpec::new(raw.rank, images)
    }
}

impl From<EndoSpec> for RawEndo {
    fn from(e: EndoSpec) -> Self {
        RawEndo {
            rank: e.rank,
            images: e.images.iter().map(ToString::to_string).collect(),
        }
    }
}

impl EndoSpec {
    pub fn new(rank: usize, images: Vec<FreeWord>) -> Result<Self> {
        if images.len() != rank {
            return Err(Error::Validation(format!(
                "{} images given for rank {rank}",
                images.len()
            )));
        }
        if let Some(w) = images.iter().find(|w| w.rank() != rank) {
            return Err(Error::RankMismatch {
                left: rank,
                right: w.rank(),
            });
        }
        Ok(EndoSpec { rank, images })
    }

    /// Images in text form, e.g. `["x1 x1 x2", "x1 x1 x1 x1 x1 x2 x2"]`.
    pub fn parse<S: AsRef<str>>(rank: usize, images: &[S]) -> Result<Self> {
        let words = images
            .iter()
            .map(|s| FreeWord::parse(rank, s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(rank, words)
    }

    pub fn identity(rank: usize) -> Self {
        let images = (0..rank)
            .map(|i| FreeWord::generator(rank, i).expect("index below rank"))
            .collect();
        EndoSpec { rank, images }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn apply(&self, w: &FreeWord) -> Result<FreeWord> {
        w.substitute(&self.images)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &EndoSpec) -> Result<EndoSpec> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let images = other
            .images
            .iter()
            .map(|w| self.apply(w))
            .collect::<Result<Vec<_>>>()?;
        Ok(EndoSpec {
            rank: self.rank,
            images,
        })
    }

    /// Matrix of the induced map on the abelianization; column `j` holds the
    /// exponent sums of the image of generator `j`.
    pub fn abelianization(&self) -> IntMatrix {
        let cols: Vec<Vec<i64>> = self.images.iter().map(FreeWord::exponent_sums).collect();
        IntMatrix::from_fn(self.rank, self.rank, |i, j| cols[j][i].into())
    }

    /// Direct sum of copies of `x -> x^2 y, y -> x^5 y^2` on consecutive
    /// generator pairs, with `x_r -> x_r^-1` on a leftover generator when
    /// `rank` is odd.
    pub fn hyperbolic_block_sum(rank: usize) -> Result<Self> {
        if rank < 2 {
            return Err(Error::Domain(format!("rank {rank} < 2")));
        }
        let g = |i: usize, e: i64| FreeWord::generator(rank, i).map(|w| w.pow(e));
        let mut images = Vec::with_capacity(rank);
        for k in 0..rank / 2 {
            let (x, y) = (2 * k, 2 * k + 1);
            images.push(g(x, 2)?.mul(&g(y, 1)?)?);
            images.push(g(x, 5)?.mul(&g(y, 2)?)?);
        }
        if rank % 2 == 1 {
            images.push(g(rank - 1, -1)?);
        }
        EndoSpec::new(rank, images)
    }

    /// Random endomorphism whose images are reduced words of at most
    /// `max_len` letters.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, rank: usize, max_len: usize) -> Self {
        let images = (0..rank)
            .map(|_| {
                let len = rng.gen_range(0..=max_len);
                let letters = (0..len)
                    .map(|_| Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5)))
                    .collect();
                FreeWord::from_letters(rank, letters).expect("letters below rank")
            })
            .collect();
        EndoSpec { rank, images }
    }

    /// Random automorphism built from `moves` elementary Nielsen moves
    /// (`x_i -> x_i x_j^±1` or `x_i -> x_j^±1 x_i`) and exactly one inversion
    /// `x_i -> x_i^-1`, so the abelianization has determinant -1.
    pub fn random_det_minus_one<R: Rng + ?Sized>(rng: &mut R, rank: usize, moves: usize) -> Self {
        assert!(rank >= 2, "Nielsen moves need two generators");
        let mut images = EndoSpec::identity(rank).images;
        let flip_at = rng.gen_range(0..=moves);
        for step in 0..=moves {
            if step == flip_at {
                let i = rng.gen_range(0..rank);
                images[i] = images[i].inverse();
            }
            if step == moves {
                break;
            }
            let i = rng.gen_range(0..rank);
            let mut j = rng.gen_range(0..rank - 1);
            if j >= i {
                j += 1;
            }
            let other = if rng.gen_bool(0.5) {
                images[j].clone()
            } else {
                images[j].inverse()
            };
            images[i] = if rng.gen_bool(0.5) {
                images[i].mul(&other)
            } else {
                other.mul(&images[i])
            }
            .expect("same rank");
        }
        EndoSpec { rank, images }
    }
}

impl fmt::Display for EndoSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "x{} -> {}", i + 1, w)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::det;
    use num_bigint::BigInt;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn abelianization_of_a_hyperbolic_map() {
        let e = EndoSpec::parse(2, &["x1 x1 x2", "x1 x1 x1 x1 x1 x2 x2"]).unwrap();
        assert_eq!(e.abelianization(), IntMatrix::from_rows(&[[2, 5], [1, 2]]));
    }

    #[test]
    fn composition_order() {
        let e = EndoSpec::parse(2, &["x2", "x1"]).unwrap();
        let f = EndoSpec::parse(2, &["x1 x2", "x2"]).unwrap();
        // e(f(x1)) = e(x1 x2) = x2 x1
        assert_eq!(e.compose(&f).unwrap().images()[0].to_string(), "x2 x1");
        let m = &e.abelianization() * &f.abelianization();
        assert_eq!(e.compose(&f).unwrap().abelianization(), m);
    }

    #[test]
    fn random_automorphisms_have_det_minus_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let e = EndoSpec::random_det_minus_one(&mut rng, 2, 5);
            assert_eq!(det(&e.abelianization()).unwrap(), BigInt::from(-1));
        }
    }

    #[test]
    fn json_round_trip() {
        let e = EndoSpec::parse(2, &["x1 X2", "1"]).unwrap();
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"rank":2,"images":["x1 X2","1"]}"#);
        assert_eq!(serde_json::from_str::<EndoSpec>(&s).unwrap(), e);
        assert!(serde_json::from_str::<EndoSpec>(r#"{"rank":2,"images":["x3","1"]}"#).is_err());
    }
}
