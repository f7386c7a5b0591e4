use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactla::{coker_order_rect, lattice_contains, rank, IntMatrix};
use crate::value::ReidValue;

fn check(m: &IntMatrix, relations: Option<&IntMatrix>) -> Result<()> {
    if !m.is_square() {
        return Err(Error::Shape(format!("endomorphism matrix is {}x{}", m.rows(), m.cols())));
    }
    let Some(r) = relations else { return Ok(()) };
    if r.rows() != m.rows() {
        return Err(Error::Shape(format!(
            "relation matrix has {} rows, expected {}",
            r.rows(),
            m.rows()
        )));
    }
    for j in 0..r.cols() {
        let image = m.mul_vec(&r.column(j))?;
        if !lattice_contains(r, &image)? {
            return Err(Error::Validation(format!(
                "endomorphism does not preserve relation column {}",
                j + 1
            )));
        }
    }
    Ok(())
}

/// `[I - M | R]`: its cokernel is `A / (1 - φ) A` for `A = Z^n / R`.
fn twisted_relations(m: &IntMatrix, relations: Option<&IntMatrix>) -> Result<IntMatrix> {
    let im = m.identity_minus()?;
    match relations {
        Some(r) => im.hstack(r),
        None => Ok(im),
    }
}

/// Reidemeister number of the endomorphism `m` of `Z^n / <relations>`:
/// the order of `Coker(1 - φ)`.
pub fn reid_fg_abelian(m: &IntMatrix, relations: Option<&IntMatrix>) -> Result<ReidValue> {
    check(m, relations)?;
    Ok(coker_order_rect(&twisted_relations(m, relations)?))
}

/// Whether `Fix φ` is finite; for finitely generated abelian groups this is
/// the same as `1 - φ` having full rank modulo torsion.
pub fn fix_finite(m: &IntMatrix, relations: Option<&IntMatrix>) -> Result<bool> {
    check(m, relations)?;
    Ok(rank(&twisted_relations(m, relations)?) == m.rows())
}

/// Matrix of multiplication by an integer on `Z`.
pub fn scalar(k: i64) -> IntMatrix {
    IntMatrix::from_rows(&[[k]])
}

/// Relation matrix `diag(orders)` for a finite abelian group.
pub fn torsion_relations(orders: &[u64]) -> IntMatrix {
    IntMatrix::diagonal(orders.iter().map(|&d| BigInt::from(d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_examples() {
        let m = IntMatrix::from_rows(&[[2, 5], [1, 2]]);
        assert_eq!(reid_fg_abelian(&m, None).unwrap(), ReidValue::finite(4));
        assert!(reid_fg_abelian(&scalar(1), None).unwrap().is_infinite());
        assert_eq!(reid_fg_abelian(&scalar(-1), None).unwrap(), ReidValue::finite(2));
        assert!(fix_finite(&m, None).unwrap());
        assert!(!fix_finite(&scalar(1), None).unwrap());
    }

    #[test]
    fn torsion_examples() {
        let r = torsion_relations(&[2]);
        assert_eq!(reid_fg_abelian(&scalar(1), Some(&r)).unwrap(), ReidValue::finite(2));
        assert!(fix_finite(&scalar(1), Some(&r)).unwrap());
        // Z_4, x -> 3x: 1 - 3 = -2, cokernel Z_2
        let r4 = torsion_relations(&[4]);
        assert_eq!(reid_fg_abelian(&scalar(3), Some(&r4)).unwrap(), ReidValue::finite(2));
        // Z ⊕ Z_2 with the identity: infinite
        let r = IntMatrix::from_rows(&[[0], [2]]);
        assert!(reid_fg_abelian(&IntMatrix::identity(2), Some(&r)).unwrap().is_infinite());
    }

    #[test]
    fn incompatible_relations() {
        // Z ⊕ Z_2, free generator sent to the torsion one: fine; torsion sent to free: not.
        let r = IntMatrix::from_rows(&[[0], [2]]);
        let bad = IntMatrix::from_rows(&[[1, 1], [0, 1]]);
        assert!(matches!(reid_fg_abelian(&bad, Some(&r)), Err(Error::Validation(_))));
        let ok = IntMatrix::from_rows(&[[1, 0], [1, 1]]);
        assert!(reid_fg_abelian(&ok, Some(&r)).is_ok());
    }
}
