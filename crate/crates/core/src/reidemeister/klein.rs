use serde::Serialize;

use crate::catalog::{DihedralAut, DihedralElement, KleinAut, KleinCase, KleinElement};

fn sign_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Solves `c m = rhs` for `c` in `{0, 2}` (any `m` when `c = 0`).
fn solve_coefficient(c: i64, rhs: i64) -> Option<i64> {
    match c {
        0 => (rhs == 0).then_some(0),
        _ => (rhs % c == 0).then(|| rhs / c),
    }
}

/// A conjugator `σ` with `h = σ g a(σ)^-1`, or `None` if `g` and `h` lie in
/// different twisted classes.
///
/// With `σ = x^m y^k` and `p` the parity of `k`:
/// `h_k = g_k + k (1 - delta)` and
/// `h_m = m (1 - (-1)^{g_k} eps) + (-1)^p g_m - (-1)^{g_k} r p`.
pub fn klein_conjugator(a: KleinAut, g: KleinElement, h: KleinElement) -> Option<KleinElement> {
    let sg = sign_pow(g.k);
    let c = 1 - sg * a.eps;
    for p in [0i64, 1] {
        let k = if a.delta == 1 {
            if h.k != g.k {
                continue;
            }
            p
        } else {
            let diff = h.k - g.k;
            if diff % 2 != 0 || (diff / 2).rem_euclid(2) != p {
                continue;
            }
            diff / 2
        };
        let rhs = h.m - sign_pow(p) * g.m + sg * a.r * p;
        if let Some(m) = solve_coefficient(c, rhs) {
            let sigma = KleinElement::new(m, k);
            debug_assert_eq!(sigma.mul(g).mul(a.apply(sigma).inverse()), h);
            return Some(sigma);
        }
    }
    None
}

pub fn klein_twisted_conjugate(a: KleinAut, g: KleinElement, h: KleinElement) -> bool {
    klein_conjugator(a, g, h).is_some()
}

/// Witness family distinguishing infinitely many classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KleinFamily {
    /// `x^i`
    #[serde(rename = "x^i")]
    XPow,
    /// `x^i y`
    #[serde(rename = "x^i y")]
    XPowY,
    /// `y^i`
    #[serde(rename = "y^i")]
    YPow,
}

impl KleinFamily {
    pub fn member(self, i: i64) -> KleinElement {
        match self {
            KleinFamily::XPow => KleinElement::new(i, 0),
            KleinFamily::XPowY => KleinElement::new(i, 1),
            KleinFamily::YPow => KleinElement::new(0, i),
        }
    }

    /// The family used for each case: cases a and c are separated by the
    /// `y`-exponent (the quotient by `<x>`), b by `x^i`, d by `x^i y`.
    pub fn for_case(case: KleinCase) -> KleinFamily {
        match case {
            KleinCase::A | KleinCase::C => KleinFamily::YPow,
            KleinCase::B => KleinFamily::XPow,
            KleinCase::D => KleinFamily::XPowY,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            KleinFamily::XPow => "x^i",
            KleinFamily::XPowY => "x^i y",
            KleinFamily::YPow => "y^i",
        }
    }

    pub fn from_label(s: &str) -> Option<KleinFamily> {
        [KleinFamily::XPow, KleinFamily::XPowY, KleinFamily::YPow]
            .into_iter()
            .find(|f| f.label() == s)
    }
}

/// Parametric analysis of a family: whether `f(i) ~ f(j)` forces `i = j`
/// for all integers, read off from the coefficients of the decision
/// procedure (which do not depend on `i, j`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyAnalysis {
    pub family: KleinFamily,
    pub allowed_conjugator_parities: Vec<i64>,
    pub m_coefficient: i64,
    pub pairwise_distinct: bool,
}

pub fn analyze_family(a: KleinAut, family: KleinFamily) -> FamilyAnalysis {
    match family {
        KleinFamily::YPow => {
            // h_k - g_k = j - i must equal k (1 - delta); with delta = 1 this
            // forces i = j for every conjugator.
            FamilyAnalysis {
                family,
                allowed_conjugator_parities: vec![0, 1],
                m_coefficient: 1 - a.eps,
                pairwise_distinct: a.delta == 1,
            }
        }
        KleinFamily::XPow | KleinFamily::XPowY => {
            let gk = if family == KleinFamily::XPow { 0 } else { 1 };
            let c = 1 - sign_pow(gk) * a.eps;
            // same y-exponent: k (1 - delta) = 0, so k = 0 when delta = -1
            let parities = if a.delta == -1 { vec![0] } else { vec![0, 1] };
            // p = 0 gives c m = j - i; p = 1 gives c m = j + i + (-1)^gk r,
            // which identifies distinct members for suitable i, j.
            let distinct = c == 0 && parities == [0];
            FamilyAnalysis {
                family,
                allowed_conjugator_parities: parities,
                m_coefficient: c,
                pairwise_distinct: distinct,
            }
        }
    }
}

/// Classes of a family window under the decision procedure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyWindow {
    pub family: KleinFamily,
    pub lo: i64,
    pub hi: i64,
    pub checked_pairs: u64,
    pub distinct_classes: usize,
}

pub fn family_window(a: KleinAut, family: KleinFamily, lo: i64, hi: i64) -> FamilyWindow {
    let members: Vec<KleinElement> = (lo..=hi).map(|i| family.member(i)).collect();
    let mut reps: Vec<KleinElement> = Vec::new();
    let mut checked = 0u64;
    for &g in &members {
        let mut fresh = true;
        for &r in &reps {
            checked += 1;
            if klein_twisted_conjugate(a, r, g) {
                fresh = false;
                break;
            }
        }
        if fresh {
            reps.push(g);
        }
    }
    FamilyWindow {
        family,
        lo,
        hi,
        checked_pairs: checked,
        distinct_classes: reps.len(),
    }
}

/// Conjugator `σ` with `h = σ g a(σ)^-1` in `Z ⋊ Z_2`.
///
/// With `σ = (t^s, e)`: `h_eps = g_eps` and
/// `h_j = s (1 - (-1)^{g_eps} sign) + (-1)^e g_j - (-1)^{g_eps} e n`.
pub fn dihedral_conjugator(a: DihedralAut, g: DihedralElement, h: DihedralElement) -> Option<DihedralElement> {
    if g.eps != h.eps {
        return None;
    }
    let sg = sign_pow(g.eps as i64);
    let c = 1 - sg * a.sign;
    for e in [0u8, 1] {
        let rhs = h.j - sign_pow(e as i64) * g.j + sg * e as i64 * a.n;
        if let Some(s) = solve_coefficient(c, rhs) {
            let sigma = DihedralElement::new(s, e);
            debug_assert_eq!(sigma.mul(g).mul(a.apply(sigma).inverse()), h);
            return Some(sigma);
        }
    }
    None
}

pub fn dihedral_twisted_conjugate(a: DihedralAut, g: DihedralElement, h: DihedralElement) -> bool {
    dihedral_conjugator(a, g, h).is_some()
}

/// For `sign = -1`: the class of `(t^l, 1)` within the reflections is
/// `{(t^l, 1), (t^{n-l}, 1)}`.
pub fn dihedral_reflection_class(a: DihedralAut, l: i64) -> Vec<DihedralElement> {
    let mut out = vec![DihedralElement::new(l, 1), DihedralElement::new(a.n - l, 1)];
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(m: i64, k: i64) -> KleinElement {
        KleinElement::new(m, k)
    }

    #[test]
    fn case_b_examples() {
        let a = KleinAut::from_case(KleinCase::B, 2);
        assert!(klein_twisted_conjugate(a, el(1, 0), el(-3, 2)));
        assert!(!klein_twisted_conjugate(a, el(1, 0), el(2, 0)));
        for g in [el(0, 0), el(3, -1), el(-2, 5)] {
            assert!(klein_twisted_conjugate(a, g, g));
        }
    }

    #[test]
    fn conjugators_check_out() {
        for case in KleinCase::ALL {
            for r in -2..=2 {
                let a = KleinAut::from_case(case, r);
                for m in -3..=3 {
                    for k in -3..=3 {
                        let sigma = el(m, k);
                        let g = el(2, 1);
                        let h = sigma.mul(g).mul(a.apply(sigma).inverse());
                        let found = klein_conjugator(a, g, h).expect("conjugate by construction");
                        assert_eq!(found.mul(g).mul(a.apply(found).inverse()), h);
                    }
                }
            }
        }
    }

    #[test]
    fn families_are_distinct() {
        for case in KleinCase::ALL {
            for r in -5..=5 {
                let a = KleinAut::from_case(case, r);
                let family = KleinFamily::for_case(case);
                assert!(analyze_family(a, family).pairwise_distinct, "{a}");
                assert_eq!(family_window(a, family, -20, 20).distinct_classes, 41);
            }
        }
        let a = KleinAut::from_case(KleinCase::A, 0);
        assert!(!analyze_family(a, KleinFamily::XPow).pairwise_distinct);
        assert!(family_window(a, KleinFamily::XPow, -20, 20).distinct_classes < 41);
    }

    #[test]
    fn dihedral_examples() {
        let a = DihedralAut::new(-1, 0).unwrap();
        assert_eq!(
            dihedral_reflection_class(a, 2),
            vec![DihedralElement::new(-2, 1), DihedralElement::new(2, 1)]
        );
        let b = DihedralAut::new(-1, 5).unwrap();
        assert!(dihedral_twisted_conjugate(b, DihedralElement::new(2, 1), DihedralElement::new(3, 1)));
        assert!(!dihedral_twisted_conjugate(b, DihedralElement::new(2, 1), DihedralElement::new(4, 1)));
    }
}
