use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::partition::OrbitPartition;
use super::union_find::UnionFind;
use crate::catalog::{KleinAut, KleinElement};
use crate::reidemeister::klein_twisted_conjugate;

/// Elements of word length at most `radius` in `{x^±1, y^±1}`, in BFS order.
pub fn klein_ball(radius: usize) -> Vec<KleinElement> {
    let gens = [
        KleinElement::X,
        KleinElement::X.inverse(),
        KleinElement::Y,
        KleinElement::Y.inverse(),
    ];
    let mut dist = HashMap::from([(KleinElement::IDENTITY, 0usize)]);
    let mut order = vec![KleinElement::IDENTITY];
    let mut queue = VecDeque::from([KleinElement::IDENTITY]);
    while let Some(g) = queue.pop_front() {
        let d = dist[&g];
        if d == radius {
            continue;
        }
        for s in gens {
            let h = g.mul(s);
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(h) {
                e.insert(d + 1);
                order.push(h);
                queue.push_back(h);
            }
        }
    }
    order
}

/// Partition of the radius-`radius` ball: two elements are merged when a
/// conjugator of length at most `2 radius` links them. Merges are always
/// genuine; conjugate pairs needing longer conjugators stay apart.
pub fn klein_ball_partition(a: KleinAut, radius: usize) -> OrbitPartition {
    let ball = klein_ball(radius);
    let index: HashMap<KleinElement, usize> = ball.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let conjugators = klein_ball(2 * radius);
    let mut uf = UnionFind::new(ball.len());
    for (i, &g) in ball.iter().enumerate() {
        for &s in &conjugators {
            let h = s.mul(g).mul(a.apply(s).inverse());
            if let Some(&j) = index.get(&h) {
                uf.union(i, j);
            }
        }
    }
    OrbitPartition::from_union_find(ball.iter().map(ToString::to_string).collect(), uf)
}

/// Comparison of a ball partition with the closed-form decision procedure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallAgreement {
    pub aut: KleinAut,
    pub radius: usize,
    pub elements: usize,
    pub pairs: u64,
    pub merged_pairs: u64,
    /// Merged by the ball search but declared non-conjugate.
    pub contradictions: u64,
    /// Declared conjugate but not merged inside the ball.
    pub unmerged_conjugate_pairs: u64,
}

pub fn klein_ball_agreement(a: KleinAut, radius: usize) -> BallAgreement {
    let ball = klein_ball(radius);
    let p = klein_ball_partition(a, radius);
    let mut out = BallAgreement {
        aut: a,
        radius,
        elements: ball.len(),
        pairs: 0,
        merged_pairs: 0,
        contradictions: 0,
        unmerged_conjugate_pairs: 0,
    };
    for i in 0..ball.len() {
        for j in i..ball.len() {
            out.pairs += 1;
            let merged = p.same_class(i, j);
            let decided = klein_twisted_conjugate(a, ball[i], ball[j]);
            out.merged_pairs += merged as u64;
            out.contradictions += (merged && !decided) as u64;
            out.unmerged_conjugate_pairs += (!merged && decided) as u64;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::KleinCase;

    #[test]
    fn ball_sizes() {
        assert_eq!(klein_ball(0).len(), 1);
        assert_eq!(klein_ball(1).len(), 5);
    }

    #[test]
    fn case_b_examples() {
        let find = |ball: &[KleinElement], g: KleinElement| ball.iter().position(|&h| h == g).unwrap();
        let a = KleinAut::from_case(KleinCase::B, 0);
        let ball = klein_ball(5);
        let p = klein_ball_partition(a, 5);
        assert!(!p.same_class(find(&ball, KleinElement::new(1, 0)), find(&ball, KleinElement::new(2, 0))));

        let a = KleinAut::from_case(KleinCase::B, 2);
        let ball = klein_ball(6);
        let p = klein_ball_partition(a, 6);
        assert!(p.same_class(find(&ball, KleinElement::new(1, 0)), find(&ball, KleinElement::new(-3, 2))));
    }
}
