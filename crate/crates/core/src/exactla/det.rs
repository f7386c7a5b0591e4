use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntMatrix;
use crate::error::Result;

/// Exact determinant. Cofactor expansion up to 4x4, Bareiss elimination
/// beyond.
pub fn det(m: &IntMatrix) -> Result<BigInt> {
    let n = m.require_square("det")?;
    if n <= 4 {
        det_cofactor(m)
    } else {
        det_bareiss(m)
    }
}

/// Laplace expansion along the first row. Exponential; meant for small
/// matrices and as a cross-check of [`det_bareiss`].
pub fn det_cofactor(m: &IntMatrix) -> Result<BigInt> {
    let n = m.require_square("det_cofactor")?;
    let cols: Vec<usize> = (0..n).collect();
    Ok(cofactor(m, 0, &cols))
}

fn cofactor(m: &IntMatrix, row: usize, cols: &[usize]) -> BigInt {
    match cols.len() {
        0 => BigInt::one(),
        1 => m.get(row, cols[0]).clone(),
        2 => m.get(row, cols[0]) * m.get(row + 1, cols[1]) - m.get(row, cols[1]) * m.get(row + 1, cols[0]),
        _ => {
            let mut acc = BigInt::zero();
            for (k, &c) in cols.iter().enumerate() {
                let a = m.get(row, c);
                if a.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let minor = a * cofactor(m, row + 1, &rest);
                if k % 2 == 0 {
                    acc += minor;
                } else {
                    acc -= minor;
                }
            }
            acc
        }
    }
}

/// Bareiss fraction-free elimination; every intermediate division is exact.
pub fn det_bareiss(m: &IntMatrix) -> Result<BigInt> {
    let n = m.require_square("det_bareiss")?;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(k, k) * a.get(i, j) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
            a.set(i, k, BigInt::zero());
        }
        prev = a.get(k, k).clone();
    }
    Ok(sign * a.get(n - 1, n - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        assert_eq!(det(&IntMatrix::identity(3)).unwrap(), BigInt::one());
        assert_eq!(det(&IntMatrix::from_rows(&[[2, 5], [1, 2]])).unwrap(), BigInt::from(-1));
        let m = IntMatrix::diagonal([-2, -2, -2, -2].map(BigInt::from));
        assert_eq!(det(&m).unwrap(), BigInt::from(16));
    }

    #[test]
    fn non_square_is_a_shape_error() {
        assert!(matches!(det(&IntMatrix::zeros(2, 3)), Err(crate::Error::Shape(_))));
    }

    #[test]
    fn bareiss_handles_zero_pivots() {
        let m = IntMatrix::from_rows(&[
            [0, 1, 2, 3, 4],
            [1, 0, 1, 0, 1],
            [2, 2, 0, 1, 1],
            [0, 0, 3, 0, 1],
            [1, 1, 1, 1, 0],
        ]);
        assert_eq!(det_bareiss(&m).unwrap(), det_cofactor(&m).unwrap());
        let singular = IntMatrix::from_rows(&[[1, 2, 3, 4, 5]; 5]);
        assert!(det(&singular).unwrap().is_zero());
    }
}
