use super::partition::OrbitPartition;
use super::union_find::UnionFind;
use crate::catalog::FinitePcGroup;
use crate::error::Result;

/// Up to this order every pair `(α, σ)` is visited; beyond it only the
/// generators act, which yields the same orbits.
pub const ALL_PAIRS_LIMIT: usize = 4096;

/// Twisted conjugacy classes `α ~ σ α φ(σ)^-1` of the endomorphism given by
/// generator images (element indices).
pub fn twisted_classes_finite(g: &FinitePcGroup, images: &[usize]) -> Result<OrbitPartition> {
    let phi = g.endo_table(images)?;
    Ok(twisted_classes_table(g, &phi))
}

/// Same, from an element map already known to be an endomorphism.
pub fn twisted_classes_table(g: &FinitePcGroup, phi: &[usize]) -> OrbitPartition {
    let n = g.order();
    let mut uf = UnionFind::new(n);
    let actors: Vec<usize> = if n <= ALL_PAIRS_LIMIT {
        (0..n).collect()
    } else {
        (0..g.generators()).map(|i| g.generator(i)).collect()
    };
    let inv_phi: Vec<usize> = actors.iter().map(|&s| g.inverse(phi[s])).collect();
    for alpha in 0..n {
        for (&s, &t) in actors.iter().zip(&inv_phi) {
            uf.union(alpha, g.mul(g.mul(s, alpha), t));
        }
    }
    let elements = (0..n).map(|i| g.format_element(i)).collect();
    OrbitPartition::from_union_find(elements, uf)
}

/// Ordinary conjugacy classes, computed independently of the twisted action.
pub fn conjugacy_classes(g: &FinitePcGroup) -> usize {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut count = 0;
    for a in 0..n {
        if seen[a] {
            continue;
        }
        count += 1;
        for s in 0..n {
            seen[g.mul(g.mul(g.inverse(s), a), s)] = true;
        }
    }
    count
}

/// Size of `Fix φ`.
pub fn fixed_points(phi: &[usize]) -> usize {
    phi.iter().enumerate().filter(|&(i, &p)| i == p).count()
}
