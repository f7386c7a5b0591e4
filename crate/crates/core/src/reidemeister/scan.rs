//! Bounded automorphism scans.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::abelian::reid_fg_abelian;
use super::tower::reid_central_tower;
use crate::catalog::{build_g53, q42_induced_n_unchecked, q42_lifts};
use crate::error::{Error, Result};
use crate::exactla::{bigint_string, det, IntMatrix};
use crate::value::ReidValue;

type Col = [i64; 4];
/// Matrix as four columns; `cols[j][i]` is row `i`, column `j`.
type Cols = [Col; 4];

/// Largest entry bound the i64 pruning stays exact for.
pub const MAX_Q42_BOUND: u64 = 1 << 20;

fn col_minor(a: &Col, b: &Col, r: (usize, usize)) -> i64 {
    a[r.0] * b[r.1] - a[r.1] * b[r.0]
}

/// Minors on surviving rows for the killed column pair `(a, b)` vanish.
fn killed_ok(a: &Col, b: &Col) -> bool {
    crate::catalog::Q42_SURVIVING
        .iter()
        .all(|&r| col_minor(a, b, r) == 0)
}

fn to_matrix(c: &Cols) -> IntMatrix {
    IntMatrix::from_fn(4, 4, |i, j| BigInt::from(c[j][i]))
}

fn all_columns(bound: i64) -> Vec<Col> {
    let range: Vec<i64> = (-bound..=bound).collect();
    let mut out = Vec::with_capacity(range.len().pow(4));
    for &a in &range {
        for &b in &range {
            for &c in &range {
                for &d in &range {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// One named matrix evaluated in full.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Q42Checkpoint {
    pub label: String,
    pub matrix: IntMatrix,
    pub lifts: bool,
    pub unimodular: bool,
    pub n: Option<IntMatrix>,
    #[serde(with = "bigint_string")]
    pub det_m_minus_id: BigInt,
    #[serde(with = "crate::exactla::opt_bigint_string")]
    pub det_n_minus_id: Option<BigInt>,
    pub value: Option<ReidValue>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Q42ScanReport {
    pub bound: u64,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub raw_candidates: String,
    pub examined: u64,
    pub lifting: u64,
    pub lifting_unimodular: u64,
    pub infinite: u64,
    pub finite_r_counterexamples: Vec<IntMatrix>,
    /// Lifting automorphisms where neither `I - M` nor `I - N` is singular.
    pub invariant_violations: Vec<IntMatrix>,
    pub checkpoints: Vec<Q42Checkpoint>,
}

impl Q42ScanReport {
    pub fn passed(&self) -> bool {
        self.finite_r_counterexamples.is_empty() && self.invariant_violations.is_empty()
    }
}

#[derive(Default)]
struct Tally {
    examined: u64,
    lifting: u64,
    unimodular: u64,
    infinite: u64,
    counterexamples: Vec<IntMatrix>,
    violations: Vec<IntMatrix>,
}

impl Tally {
    fn merge(mut self, o: Tally) -> Tally {
        self.examined += o.examined;
        self.lifting += o.lifting;
        self.unimodular += o.unimodular;
        self.infinite += o.infinite;
        self.counterexamples.extend(o.counterexamples);
        self.violations.extend(o.violations);
        self
    }

    /// `c` already lifts.
    fn record(&mut self, c: &Cols) -> Result<()> {
        self.lifting += 1;
        let m = to_matrix(c);
        let d = det(&m)?;
        if d.abs() != BigInt::one() {
            return Ok(());
        }
        self.unimodular += 1;
        let n = q42_induced_n_unchecked(&m);
        let rm = reid_fg_abelian(&m, None)?;
        let rn = reid_fg_abelian(&n, None)?;
        let singular = |x: &IntMatrix| det(&x.identity_minus().expect("square")).map(|d| d.is_zero());
        if !singular(&m)? && !singular(&n)? {
            self.violations.push(m.clone());
        }
        if (&rm * &rn).is_infinite() {
            self.infinite += 1;
        } else {
            self.counterexamples.push(m);
        }
        Ok(())
    }
}

/// Full evaluation of one matrix.
pub fn q42_checkpoint(label: &str, m: &IntMatrix) -> Result<Q42Checkpoint> {
    let lifts = q42_lifts(m)?;
    let unimodular = det(m)?.abs() == BigInt::one();
    let det_m_minus_id = det(&m.minus_identity()?)?;
    let (n, det_n_minus_id, value) = if lifts {
        let n = q42_induced_n_unchecked(m);
        let dn = det(&n.minus_identity()?)?;
        let v = &reid_fg_abelian(m, None)? * &reid_fg_abelian(&n, None)?;
        (Some(n), Some(dn), Some(v))
    } else {
        (None, None, None)
    };
    Ok(Q42Checkpoint {
        label: label.into(),
        matrix: m.clone(),
        lifts,
        unimodular,
        n,
        det_m_minus_id,
        det_n_minus_id,
        value,
    })
}

/// The two printed checkpoints of the case analysis.
pub fn q42_standard_checkpoints() -> Result<Vec<Q42Checkpoint>> {
    let step2 = IntMatrix::from_rows(&[[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]);
    let step3 = IntMatrix::from_fn(4, 4, |i, j| if i == j { BigInt::from(-1) } else { BigInt::zero() });
    Ok(vec![
        q42_checkpoint("b4 = a3 = 1, c1 = d2 = -1", &step2)?,
        q42_checkpoint("a1 = b2 = c3 = d4 = -1", &step3)?,
    ])
}

fn check_bound(bound: u64) -> Result<i64> {
    if bound == 0 {
        return Err(Error::Domain("bound must be at least 1".into()));
    }
    if bound > MAX_Q42_BOUND {
        return Err(Error::TooLarge(format!("bound {bound} exceeds {MAX_Q42_BOUND}")));
    }
    Ok(bound as i64)
}

/// All 4x4 matrices with entries in `[-bound, bound]`. Columns are chosen in
/// the order 0, 2, 1, 3 so each new column completes one killed pair and
/// its three minors prune the search before any determinant is taken.
pub fn scan_q42(bound: u64) -> Result<Q42ScanReport> {
    let b = check_bound(bound)?;
    let cols = all_columns(b);
    let tally = cols
        .par_iter()
        .map(|c0| -> Result<Tally> {
            let mut t = Tally::default();
            for c2 in &cols {
                if !killed_ok(c0, c2) {
                    t.examined += (cols.len() * cols.len()) as u64;
                    continue;
                }
                for c1 in &cols {
                    if !killed_ok(c1, c2) {
                        t.examined += cols.len() as u64;
                        continue;
                    }
                    for c3 in &cols {
                        t.examined += 1;
                        if killed_ok(c0, c3) {
                            t.record(&[*c0, *c1, *c2, *c3])?;
                        }
                    }
                }
            }
            Ok(t)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;
    let side = BigInt::from(2 * b + 1);
    finish(bound, "exhaustive", None, side.pow(16).to_string(), tally)
}

/// Randomized variant for larger bounds: each column is drawn uniformly
/// and redrawn (up to `retries` times) until its killed pair vanishes.
pub fn scan_q42_sampled(bound: u64, samples: u64, seed: u64, retries: u32) -> Result<Q42ScanReport> {
    let b = check_bound(bound)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| -> Col { std::array::from_fn(|_| rng.gen_range(-b..=b)) };
    let mut t = Tally::default();
    for _ in 0..samples {
        t.examined += 1;
        let c0 = draw(&mut rng);
        let pick = |rng: &mut ChaCha8Rng, ok: &dyn Fn(&Col) -> bool| {
            (0..retries).map(|_| draw(rng)).find(|c| ok(c))
        };
        let Some(c2) = pick(&mut rng, &|c| killed_ok(&c0, c)) else { continue };
        let Some(c1) = pick(&mut rng, &|c| killed_ok(c, &c2)) else { continue };
        let Some(c3) = pick(&mut rng, &|c| killed_ok(&c0, c)) else { continue };
        t.record(&[c0, c1, c2, c3])?;
    }
    let side = BigInt::from(2 * b + 1);
    finish(bound, "sampled", Some(seed), side.pow(16).to_string(), t)
}

fn finish(bound: u64, mode: &str, seed: Option<u64>, raw: String, mut t: Tally) -> Result<Q42ScanReport> {
    t.counterexamples.sort_by_key(|m| format!("{m:?}"));
    t.violations.sort_by_key(|m| format!("{m:?}"));
    Ok(Q42ScanReport {
        bound,
        mode: mode.into(),
        seed,
        raw_candidates: raw,
        examined: t.examined,
        lifting: t.lifting,
        lifting_unimodular: t.unimodular,
        infinite: t.infinite,
        finite_r_counterexamples: t.counterexamples,
        invariant_violations: t.violations,
        checkpoints: q42_standard_checkpoints()?,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct G53Tuple {
    pub a: i64,
    pub b: i64,
    pub d: i64,
    /// Values on the layers `Z^2`, `<B>`, `<w1>`.
    pub layer_values: Vec<ReidValue>,
    /// Forced multipliers on `<B>` and `<w1>`.
    pub multipliers: Vec<String>,
    pub value: ReidValue,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct G53ScanReport {
    pub b_bound: u64,
    pub tuples: Vec<G53Tuple>,
    pub count: usize,
    pub all_infinite: bool,
    pub finite: Vec<G53Tuple>,
}

/// Every abelianization `[[a, 0], [b, d]]` with `a, d = ±1`, `|b| <= b_bound`;
/// the higher layer maps are derived, not supplied.
pub fn scan_g53(b_bound: u64) -> Result<G53ScanReport> {
    let g = build_g53();
    let bb = b_bound as i64;
    let mut tuples = Vec::new();
    for a in [1i64, -1] {
        for d in [1i64, -1] {
            for b in -bb..=bb {
                let l1 = IntMatrix::from_rows(&[[a, 0], [b, d]]);
                let e = g.derive_endo(&l1)?;
                let rep = reid_central_tower(&g, &e)?;
                tuples.push(G53Tuple {
                    a,
                    b,
                    d,
                    layer_values: rep.layers.iter().map(|l| l.value.clone()).collect(),
                    multipliers: e.layer_matrices[1..].iter().map(|m| m.get(0, 0).to_string()).collect(),
                    value: rep.value,
                });
            }
        }
    }
    let finite: Vec<G53Tuple> = tuples.iter().filter(|t| t.value.is_finite()).cloned().collect();
    Ok(G53ScanReport {
        b_bound,
        count: tuples.len(),
        all_infinite: finite.is_empty(),
        finite,
        tuples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checkpoints_match_printed_values() {
        let cps = q42_standard_checkpoints().unwrap();
        assert!(cps.iter().all(|c| c.lifts && c.unimodular));
        assert_eq!(cps[0].det_m_minus_id, BigInt::from(4));
        assert_eq!(cps[0].det_n_minus_id, Some(BigInt::zero()));
        assert_eq!(cps[1].det_m_minus_id, BigInt::from(16));
        assert_eq!(cps[1].det_n_minus_id, Some(BigInt::zero()));
        assert!(cps.iter().all(|c| c.value == Some(ReidValue::Infinite)));
    }

    #[test]
    fn pruned_counts_agree_with_direct_filter_on_a_slice() {
        // fix the first two columns and compare with plain q42_lifts
        let cols = all_columns(1);
        let c0 = [1, 0, 0, 0];
        let c1 = [0, 1, 0, 0];
        let mut direct = 0;
        let mut pruned = 0;
        for c2 in &cols {
            for c3 in &cols {
                let m = to_matrix(&[c0, c1, *c2, *c3]);
                if q42_lifts(&m).unwrap() {
                    direct += 1;
                }
                if killed_ok(&c0, c2) && killed_ok(&c1, c2) && killed_ok(&c0, c3) {
                    pruned += 1;
                }
            }
        }
        assert_eq!(direct, pruned);
        assert!(direct > 0);
    }

    #[test]
    fn g53_small_scan() {
        let r = scan_g53(2).unwrap();
        assert_eq!(r.count, 20);
        assert!(r.all_infinite);
    }

    #[test]
    fn sampled_scan_is_deterministic() {
        let a = scan_q42_sampled(3, 200, 7, 50).unwrap();
        let b = scan_q42_sampled(3, 200, 7, 50).unwrap();
        assert_eq!(a, b);
        assert!(a.finite_r_counterexamples.is_empty());
    }
}
