use serde::Serialize;

use super::union_find::UnionFind;

/// A partition of a finite list of elements into classes, each labelled by
/// its first element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    pub elements: Vec<String>,
    /// Index of the representative of each element's class.
    pub class_id: Vec<usize>,
    pub class_count: usize,
}

impl OrbitPartition {
    pub fn from_union_find(elements: Vec<String>, mut uf: UnionFind) -> Self {
        let class_id = uf.canonical();
        let class_count = class_id.iter().enumerate().filter(|&(i, &r)| i == r).count();
        OrbitPartition {
            elements,
            class_id,
            class_count,
        }
    }

    pub fn same_class(&self, i: usize, j: usize) -> bool {
        self.class_id[i] == self.class_id[j]
    }

    /// Sizes of the classes in order of their representatives.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.elements.len()];
        for &r in &self.class_id {
            sizes[r] += 1;
        }
        sizes.into_iter().filter(|&s| s > 0).collect()
    }

    /// Member indices of the class containing `i`.
    pub fn class_of(&self, i: usize) -> Vec<usize> {
        (0..self.elements.len()).filter(|&j| self.same_class(i, j)).collect()
    }
}
