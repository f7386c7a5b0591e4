//! Exact integer linear algebra: the arithmetic substrate of every
//! Reidemeister computation in the crate.

mod det;
mod matrix;
mod snf;

pub use det::{det, det_bareiss, det_cofactor};
pub use matrix::{bigint_string, bigvec, opt_bigint_string, IntMatrix};
pub use snf::{
    coker_order, coker_order_rect, has_eigenvalue_one, lattice_contains, rank,
    smith_normal_form, solve_right, SnfResult,
};
