use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactla::IntMatrix;

/// Surviving commutators `x∧y, y∧w, z∧w` (0-based index pairs).
pub const Q42_SURVIVING: [(usize, usize); 3] = [(0, 1), (1, 3), (2, 3)];
/// Killed commutators `x∧z, x∧w, y∧z`.
pub const Q42_KILLED: [(usize, usize); 3] = [(0, 2), (0, 3), (1, 2)];

/// 2×2 minor of `m` on rows `r` and columns `c`: the `e_r` coordinate of
/// `m e_c0 ∧ m e_c1`.
pub fn minor(m: &IntMatrix, r: (usize, usize), c: (usize, usize)) -> BigInt {
    m.get(r.0, c.0) * m.get(r.1, c.1) - m.get(r.0, c.1) * m.get(r.1, c.0)
}

fn require_4x4(m: &IntMatrix) -> Result<()> {
    if m.rows() != 4 || m.cols() != 4 {
        return Err(Error::Shape(format!("expected a 4x4 matrix, got {}x{}", m.rows(), m.cols())));
    }
    Ok(())
}

/// Whether `m` induces an endomorphism of Q42: the exterior square of `m`
/// maps the killed span into itself, i.e. the nine minors with surviving
/// rows and killed columns vanish.
pub fn q42_lifts(m: &IntMatrix) -> Result<bool> {
    require_4x4(m)?;
    Ok(Q42_KILLED
        .iter()
        .all(|&c| Q42_SURVIVING.iter().all(|&r| minor(m, r, c).is_zero())))
}

/// Matrix of the induced map on the commutator layer, in the basis
/// `[x,y], [y,w], [z,w]`.
pub fn q42_induced_n(m: &IntMatrix) -> Result<IntMatrix> {
    if !q42_lifts(m)? {
        return Err(Error::Precondition(
            "matrix does not preserve the killed commutators".into(),
        ));
    }
    Ok(q42_induced_n_unchecked(m))
}

pub(crate) fn q42_induced_n_unchecked(m: &IntMatrix) -> IntMatrix {
    IntMatrix::from_fn(3, 3, |i, j| minor(m, Q42_SURVIVING[i], Q42_SURVIVING[j]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_lifts() {
        let id = IntMatrix::identity(4);
        assert!(q42_lifts(&id).unwrap());
        assert_eq!(q42_induced_n(&id).unwrap(), IntMatrix::identity(3));
    }

    #[test]
    fn swapping_x_and_z_does_not_lift() {
        let p = IntMatrix::from_rows(&[[0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1]]);
        assert!(!q42_lifts(&p).unwrap());
        assert!(q42_induced_n(&p).is_err());
    }

    #[test]
    fn step_two_shape() {
        let (a2, a3, a4, b4, c1, c2, c4, d2) = (2i64, 3, 5, 7, 11, 13, 17, 19);
        let m = IntMatrix::from_rows(&[[0, a2, a3, a4], [0, 0, 0, b4], [c1, c2, 0, c4], [0, d2, 0, 0]]);
        assert!(q42_lifts(&m).unwrap());
        let n = IntMatrix::from_rows(&[
            [0, a2 * b4, a3 * b4],
            [0, -d2 * b4, 0],
            [c1 * d2, -d2 * c4, 0],
        ]);
        assert_eq!(q42_induced_n(&m).unwrap(), n);
    }

    #[test]
    fn step_three_shape() {
        // b4 = c1 = d2 = 0 as forced by the determinant condition
        let (a1, a2, a4, b2, c2, c3, c4, d4) = (-1i64, 2, 3, -1, 5, -1, 7, -1);
        let m = IntMatrix::from_rows(&[[a1, a2, 0, a4], [0, b2, 0, 0], [0, c2, c3, c4], [0, 0, 0, d4]]);
        assert!(q42_lifts(&m).unwrap());
        // middle entry is b2*d4
        let n = IntMatrix::from_rows(&[[a1 * b2, -b2 * a4, 0], [0, b2 * d4, 0], [0, c2 * d4, c3 * d4]]);
        assert_eq!(q42_induced_n(&m).unwrap(), n);
    }

    #[test]
    fn wrong_shape() {
        assert!(matches!(q42_lifts(&IntMatrix::identity(3)), Err(Error::Shape(_))));
    }
}
