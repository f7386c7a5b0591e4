//! Brute-force check of the central product formula on Heisenberg groups
//! over `Z_m`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::finite::{fixed_points, twisted_classes_table};
use crate::catalog::FinitePcGroup;
use crate::error::{Error, Result};

/// Candidate spaces up to this size are enumerated exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 10_000;
/// Candidates drawn when the space is larger.
pub const SAMPLE_SIZE: u64 = 1_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductTriple {
    /// Images of `a` and `b` as normal forms.
    pub images: [String; 2],
    pub total: usize,
    pub center: usize,
    pub quotient: usize,
    /// `|Fix|` of the induced map on the quotient.
    pub quotient_fix: usize,
}

impl ProductTriple {
    pub fn holds(&self) -> bool {
        self.total == self.center * self.quotient
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductModulusReport {
    pub m: u32,
    pub group_order: usize,
    pub policy: String,
    pub candidates: u64,
    pub endomorphisms: u64,
    pub skipped: u64,
    /// First few rejection messages.
    pub skip_log: Vec<String>,
    pub violations: u64,
    pub identity: ProductTriple,
    pub violating: Vec<ProductTriple>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductReport {
    pub seed: u64,
    pub moduli: Vec<ProductModulusReport>,
    pub total_violations: u64,
}

impl ProductReport {
    pub fn passed(&self) -> bool {
        self.total_violations == 0
    }
}

struct HeisenbergSetup {
    g: FinitePcGroup,
    center: FinitePcGroup,
    quotient: FinitePcGroup,
}

impl HeisenbergSetup {
    fn new(m: u32) -> Result<Self> {
        Ok(HeisenbergSetup {
            g: FinitePcGroup::heisenberg_mod(m)?,
            center: FinitePcGroup::cyclic(m)?,
            quotient: FinitePcGroup::abelian(&[m, m])?,
        })
    }

    /// All three class counts for `a -> x`, `b -> y`, or the relation the
    /// images violate.
    fn triple(&self, x: usize, y: usize) -> Result<ProductTriple> {
        let g = &self.g;
        let c_image = g.mul(g.mul(x, y), g.mul(g.inverse(x), g.inverse(y)));
        let phi = g.endo_table(&[x, y, c_image])?;
        let total = twisted_classes_table(g, &phi).class_count;

        // restriction to the center <c>: c -> c^t
        let c = g.generator(2);
        let m = g.orders()[2] as u64;
        let t = (0..m)
            .find(|&t| g.pow(c, t) == c_image)
            .ok_or_else(|| Error::Validation("image of c is not central".into()))?;
        let z = &self.center;
        let z_images = if z.generators() == 0 { vec![] } else { vec![z.pow(z.generator(0), t)] };
        let z_phi = z.endo_table(&z_images)?;
        let center = twisted_classes_table(z, &z_phi).class_count;

        // induced map on G / <c> = Z_m x Z_m
        let q = &self.quotient;
        let proj = |e: usize| {
            let v = g.vector(e);
            q.index(&[v[0], v[1]])
        };
        let q_phi = q.endo_table(&[proj(x), proj(y)])?;
        let quotient = twisted_classes_table(q, &q_phi).class_count;

        Ok(ProductTriple {
            images: [g.format_element(x), g.format_element(y)],
            total,
            center,
            quotient,
            quotient_fix: fixed_points(&q_phi),
        })
    }
}

fn check_modulus(m: u32, rng: &mut ChaCha8Rng) -> Result<ProductModulusReport> {
    let s = HeisenbergSetup::new(m)?;
    let order = s.g.order();
    let space = (order as u64) * (order as u64);
    let (policy, pairs): (String, Vec<(usize, usize)>) = if space <= EXHAUSTIVE_LIMIT {
        ("exhaustive".into(), (0..order).flat_map(|x| (0..order).map(move |y| (x, y))).collect())
    } else {
        (
            format!("sampled {SAMPLE_SIZE}"),
            (0..SAMPLE_SIZE)
                .map(|_| (rng.gen_range(0..order), rng.gen_range(0..order)))
                .collect(),
        )
    };
    let mut report = ProductModulusReport {
        m,
        group_order: order,
        policy,
        candidates: pairs.len() as u64,
        endomorphisms: 0,
        skipped: 0,
        skip_log: Vec::new(),
        violations: 0,
        identity: s.triple(s.g.generator(0), s.g.generator(1))?,
        violating: Vec::new(),
    };
    for (x, y) in pairs {
        match s.triple(x, y) {
            Ok(t) => {
                report.endomorphisms += 1;
                if !t.holds() {
                    report.violations += 1;
                    report.violating.push(t);
                }
            }
            Err(Error::Validation(msg)) => {
                report.skipped += 1;
                if report.skip_log.len() < 5 {
                    report
                        .skip_log
                        .push(format!("a -> {}, b -> {}: {msg}", s.g.format_element(x), s.g.format_element(y)));
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

/// For each modulus compares the brute-force class count with the product
/// of the center and quotient counts, over all (or sampled) images of the
/// generators `a, b`.
pub fn verify_product_formula(moduli: &[u32], seed: u64) -> Result<ProductReport> {
    if let Some(&m) = moduli.iter().find(|&&m| m < 2) {
        return Err(Error::Domain(format!("modulus {m} < 2")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let moduli = moduli
        .iter()
        .map(|&m| check_modulus(m, &mut rng))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProductReport {
        seed,
        total_violations: moduli.iter().map(|r| r.violations).sum(),
        moduli,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_counts() {
        let s = HeisenbergSetup::new(3).unwrap();
        let t = s.triple(s.g.generator(0), s.g.generator(1)).unwrap();
        assert_eq!((t.total, t.center, t.quotient), (11, 3, 9));
        let s = HeisenbergSetup::new(2).unwrap();
        let t = s.triple(s.g.generator(0), s.g.generator(1)).unwrap();
        assert_eq!((t.total, t.center, t.quotient), (5, 2, 4));
    }
}
