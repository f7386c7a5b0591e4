//! Brute-force ground truth: twisted classes of finite groups by
//! union-find, ball-restricted partitions of the Klein bottle group, and a
//! check of the central product formula.

mod ball;
mod finite;
mod partition;
mod product;
mod union_find;

pub use ball::{klein_ball, klein_ball_agreement, klein_ball_partition, BallAgreement};
pub use finite::{conjugacy_classes, fixed_points, twisted_classes_finite, twisted_classes_table, ALL_PAIRS_LIMIT};
pub use partition::OrbitPartition;
pub use product::{
    verify_product_formula, ProductModulusReport, ProductReport, ProductTriple, EXHAUSTIVE_LIMIT, SAMPLE_SIZE,
};
pub use union_find::UnionFind;
